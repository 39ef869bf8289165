#include <algorithm>
#include <map>
#include <optional>

#include "nzflow/census.hpp"
#include "nzflow/connectivity.hpp"
#include "nzflow/errors.hpp"

namespace nzflow {
namespace {

using Poly = std::vector<BigInt>;

void trim(Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

Poly sub(const Poly& a, const Poly& b) {
  Poly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  trim(r);
  return r;
}

// p(k) * (k - 1)
Poly times_k_minus_1(const Poly& p) {
  if (p.empty()) return p;
  Poly r(p.size() + 1, 0);
  for (std::size_t i = 0; i < p.size(); ++i) {
    r[i + 1] += p[i];
    r[i] -= p[i];
  }
  trim(r);
  return r;
}

struct Small {
  int n = 0;
  std::vector<std::pair<int, int>> edges;  // unordered endpoints, loops allowed
};

bool has_bridge(const Small& g) {
  Multigraph m(g.n);
  for (auto [a, b] : g.edges) m.add_edge(a, b);
  return !bridges(m).empty();
}

class DeletionContraction {
 public:
  Poly run(Small g) {
    // Loops factor out.
    int loops = 0;
    std::vector<std::pair<int, int>> kept;
    for (auto e : g.edges) {
      if (e.first == e.second) {
        ++loops;
      } else {
        kept.push_back(e);
      }
    }
    g.edges = std::move(kept);
    Poly base = solve(normalise(std::move(g)));
    for (int i = 0; i < loops; ++i) base = times_k_minus_1(base);
    return base;
  }

 private:
  // Drops isolated vertices and relabels by (degree, old label); edges sorted.
  static Small normalise(Small g) {
    std::vector<int> deg(static_cast<std::size_t>(g.n), 0);
    for (auto [a, b] : g.edges) {
      ++deg[a];
      ++deg[b];
    }
    std::vector<int> order;
    for (int v = 0; v < g.n; ++v) {
      if (deg[v] > 0) order.push_back(v);
    }
    std::stable_sort(order.begin(), order.end(), [&](int x, int y) { return deg[x] < deg[y]; });
    std::vector<int> label(static_cast<std::size_t>(g.n), -1);
    for (std::size_t i = 0; i < order.size(); ++i) label[order[i]] = static_cast<int>(i);
    Small out;
    out.n = static_cast<int>(order.size());
    for (auto [a, b] : g.edges) {
      int x = label[a];
      int y = label[b];
      if (x > y) std::swap(x, y);
      out.edges.emplace_back(x, y);
    }
    std::sort(out.edges.begin(), out.edges.end());
    return out;
  }

  static std::vector<int> key_of(const Small& g) {
    std::vector<int> key{g.n};
    for (auto [a, b] : g.edges) {
      key.push_back(a);
      key.push_back(b);
    }
    return key;
  }

  // g is loopless and normalised.
  Poly solve(const Small& g) {
    if (g.edges.empty()) return Poly{1};
    auto key = key_of(g);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;

    Poly result;
    if (has_bridge(g)) {
      result = {};
    } else if (auto series = series_reduce(g)) {
      result = run(std::move(*series));
    } else {
      // Highest-indexed edge: p(G) = p(G / e) - p(G - e).
      const auto [a, b] = g.edges.back();
      Small deleted{g.n, {g.edges.begin(), g.edges.end() - 1}};
      Small contracted{g.n, {}};
      for (std::size_t i = 0; i + 1 < g.edges.size(); ++i) {
        auto [x, y] = g.edges[i];
        if (x == b) x = a;
        if (y == b) y = a;
        contracted.edges.emplace_back(x, y);
      }
      result = sub(run(std::move(contracted)), run(std::move(deleted)));
    }
    memo_.emplace(std::move(key), result);
    return result;
  }

  // A degree-2 vertex joins its two edges into one; flow counts are unchanged.
  static std::optional<Small> series_reduce(const Small& g) {
    std::vector<std::vector<std::size_t>> inc(static_cast<std::size_t>(g.n));
    for (std::size_t i = 0; i < g.edges.size(); ++i) {
      inc[g.edges[i].first].push_back(i);
      inc[g.edges[i].second].push_back(i);
    }
    for (int v = 0; v < g.n; ++v) {
      if (inc[v].size() != 2) continue;
      const auto [i, j] = std::pair{inc[v][0], inc[v][1]};
      const int x = g.edges[i].first == v ? g.edges[i].second : g.edges[i].first;
      const int y = g.edges[j].first == v ? g.edges[j].second : g.edges[j].first;
      Small out{g.n, {}};
      for (std::size_t k = 0; k < g.edges.size(); ++k) {
        if (k != i && k != j) out.edges.push_back(g.edges[k]);
      }
      out.edges.emplace_back(x, y);
      return out;
    }
    return std::nullopt;
  }

  std::map<std::vector<int>, Poly> memo_;
};

}  // namespace

BigInt FlowPolynomial::evaluate(long long k) const {
  BigInt acc = 0;
  for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) acc = acc * k + *it;
  return acc;
}

int FlowPolynomial::degree() const { return static_cast<int>(coefficients.size()) - 1; }

bool FlowPolynomial::is_zero() const { return coefficients.empty(); }

std::string FlowPolynomial::str() const {
  if (coefficients.empty()) return "0";
  std::string out;
  for (int i = degree(); i >= 0; --i) {
    const BigInt& c = coefficients[static_cast<std::size_t>(i)];
    if (c == 0) continue;
    BigInt mag = c < 0 ? BigInt(-c) : c;
    if (out.empty()) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    if (mag != 1 || i == 0) out += mag.str();
    if (i >= 1) out += (mag != 1 ? "*k" : "k");
    if (i >= 2) out += "^" + std::to_string(i);
  }
  return out;
}

FlowPolynomial flow_polynomial(const Multigraph& g, const CensusLimits& limits) {
  if (g.num_edges() > limits.max_edges_polynomial) {
    throw CapExceeded("edge count " + std::to_string(g.num_edges()) + " exceeds the flow polynomial cap " +
                      std::to_string(limits.max_edges_polynomial));
  }
  Small s{g.num_vertices(), {}};
  for (const Edge& e : g.edges()) s.edges.emplace_back(e.tail, e.head);
  DeletionContraction dc;
  return FlowPolynomial{dc.run(std::move(s))};
}

}  // namespace nzflow
