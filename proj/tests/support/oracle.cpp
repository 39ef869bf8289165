#include "oracle.hpp"

#include <numeric>
#include <stdexcept>

namespace oracle {
namespace {

int find(std::vector<int>& parent, int x) {
  while (parent[x] != x) x = parent[x] = parent[parent[x]];
  return x;
}

BigInt ipow(long long base, int exp) {
  BigInt out = 1;
  for (int i = 0; i < exp; ++i) out *= base;
  return out;
}

int cut_of(const Multigraph& g, std::uint32_t side) {
  int c = 0;
  for (const auto& e : g.edges()) c += ((side >> e.tail) & 1U) != ((side >> e.head) & 1U) ? 1 : 0;
  return c;
}

}  // namespace

int components(const Multigraph& g, std::uint32_t mask) {
  std::vector<int> parent(static_cast<std::size_t>(g.num_vertices()));
  std::iota(parent.begin(), parent.end(), 0);
  int count = g.num_vertices();
  const auto edges = g.edges();
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (!(mask >> i & 1U)) continue;
    const int a = find(parent, edges[i].tail);
    const int b = find(parent, edges[i].head);
    if (a != b) {
      parent[a] = b;
      --count;
    }
  }
  return count;
}

std::vector<BigInt> subset_flow_polynomial(const Multigraph& g) {
  const int m = g.num_edges();
  if (m > 24) throw std::invalid_argument("too many edges for the subset expansion");
  std::vector<BigInt> coeff(static_cast<std::size_t>(m + 1), 0);
  for (std::uint32_t mask = 0; mask < (1U << m); ++mask) {
    const int size = __builtin_popcount(mask);
    const int rank = size - g.num_vertices() + components(g, mask);
    if ((m - size) % 2 == 0) {
      coeff[rank] += 1;
    } else {
      coeff[rank] -= 1;
    }
  }
  while (coeff.size() > 1 && coeff.back() == 0) coeff.pop_back();
  return coeff;
}

BigInt subset_flow_count(const Multigraph& g, long long k) {
  const auto coeff = subset_flow_polynomial(g);
  BigInt total = 0;
  for (std::size_t i = 0; i < coeff.size(); ++i) total += coeff[i] * ipow(k, static_cast<int>(i));
  return total;
}

int brute_edge_connectivity(const Multigraph& g) {
  const int n = g.num_vertices();
  if (n < 2 || n > 16) throw std::invalid_argument("brute connectivity needs 2 <= n <= 16");
  int best = g.num_edges() + 1;
  // Vertex n-1 stays outside X; every cut has such a side.
  for (std::uint32_t side = 1; side < (1U << (n - 1)); ++side) best = std::min(best, cut_of(g, side));
  return best;
}

int brute_local_connectivity(const Multigraph& g, int s, int t) {
  const int n = g.num_vertices();
  if (n > 16) throw std::invalid_argument("brute connectivity needs n <= 16");
  int best = g.num_edges() + 1;
  for (std::uint32_t side = 0; side < (1U << n); ++side) {
    if ((side >> s & 1U) && !(side >> t & 1U)) best = std::min(best, cut_of(g, side));
  }
  return best;
}

BigInt brute_z3_orientations(const Multigraph& g) {
  std::vector<const nzflow::Edge*> plain;
  int loops = 0;
  for (const auto& e : g.edges()) {
    if (e.is_loop()) {
      ++loops;
    } else {
      plain.push_back(&e);
    }
  }
  const int m = static_cast<int>(plain.size());
  if (m > 26) throw std::invalid_argument("too many edges for brute orientation count");
  long long good = 0;
  std::vector<int> net(static_cast<std::size_t>(g.num_vertices()));
  for (std::uint64_t mask = 0; mask < (1ULL << m); ++mask) {
    std::fill(net.begin(), net.end(), 0);
    for (int i = 0; i < m; ++i) {
      const bool forward = !(mask >> i & 1ULL);
      net[forward ? plain[i]->tail : plain[i]->head] += 1;
      net[forward ? plain[i]->head : plain[i]->tail] -= 1;
    }
    bool ok = true;
    for (int x : net) ok = ok && x % 3 == 0;
    good += ok ? 1 : 0;
  }
  return BigInt(good) * ipow(2, loops);
}

}  // namespace oracle
