#include "nzflow/census.hpp"

#include <algorithm>
#include <thread>

#include "nzflow/errors.hpp"

namespace nzflow {
namespace {

// Co-tree parametrisation of the flow space of a graph.
struct CoTree {
  std::vector<std::size_t> tree;      // edge indices in the spanning forest
  std::vector<std::size_t> free;      // non-tree edge indices (loops included), ascending id
  // For each free edge: (tree slot, +1/-1) contributions of its value.
  std::vector<std::vector<std::pair<int, int>>> support;
  // Tree slots whose value is complete once free edge j is assigned.
  std::vector<std::vector<int>> settled_after;
  std::vector<int> unsupported_tree;  // tree slots no free edge touches
  int loops = 0;
};

CoTree build_cotree(const Multigraph& g) {
  const int n = g.num_vertices();
  const auto edges = g.edges();
  CoTree ct;
  std::vector<bool> in_tree(edges.size(), false);
  std::vector<int> parent_edge(static_cast<std::size_t>(n), -1);  // edge index to parent
  std::vector<Vertex> parent(static_cast<std::size_t>(n), -1);
  std::vector<int> depth(static_cast<std::size_t>(n), -1);
  for (Vertex root = 0; root < n; ++root) {
    if (depth[root] >= 0) continue;
    depth[root] = 0;
    std::vector<Vertex> queue{root};
    for (std::size_t h = 0; h < queue.size(); ++h) {
      const Vertex u = queue[h];
      for (EdgeId id : g.incident(u)) {
        const std::size_t idx = *g.index_of(id);
        const Edge& e = edges[idx];
        if (e.is_loop()) continue;
        const Vertex w = e.other(u);
        if (depth[w] < 0) {
          depth[w] = depth[u] + 1;
          parent[w] = u;
          parent_edge[w] = static_cast<int>(idx);
          in_tree[idx] = true;
          queue.push_back(w);
        }
      }
    }
  }
  std::vector<int> slot(edges.size(), -1);
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (in_tree[i]) {
      slot[i] = static_cast<int>(ct.tree.size());
      ct.tree.push_back(i);
    } else {
      ct.free.push_back(i);
      if (edges[i].is_loop()) ++ct.loops;
    }
  }
  ct.support.resize(ct.free.size());
  std::vector<int> last(ct.tree.size(), -1);
  for (std::size_t j = 0; j < ct.free.size(); ++j) {
    const Edge& e = edges[ct.free[j]];
    if (e.is_loop()) continue;
    // Value x on tail->head returns along the tree path head -> tail.
    // Walking up from head: tree edge (child c, parent p) is traversed c -> p.
    // Walking up from tail: traversed p -> c (the path's second half).
    Vertex a = e.head;
    Vertex b = e.tail;
    auto add = [&](Vertex child, bool upward) {
      const std::size_t idx = static_cast<std::size_t>(parent_edge[child]);
      const Edge& te = edges[idx];
      const bool along = upward ? (te.tail == child) : (te.head == child);
      ct.support[j].push_back({slot[idx], along ? 1 : -1});
      last[slot[idx]] = static_cast<int>(j);
    };
    while (a != b) {
      if (depth[a] >= depth[b]) {
        add(a, true);
        a = parent[a];
      } else {
        add(b, false);
        b = parent[b];
      }
    }
  }
  ct.settled_after.resize(ct.free.size());
  for (std::size_t t = 0; t < ct.tree.size(); ++t) {
    if (last[t] < 0) {
      ct.unsupported_tree.push_back(static_cast<int>(t));
    } else {
      ct.settled_after[last[t]].push_back(static_cast<int>(t));
    }
  }
  return ct;
}

struct Tables {
  int order;
  std::vector<std::vector<int>> add;
  std::vector<int> neg;

  explicit Tables(const Group& g) : order(g.order()), add(order, std::vector<int>(order)), neg(order) {
    for (int a = 0; a < order; ++a) {
      neg[a] = g.encode(g.neg(g.decode(a)));
      for (int b = 0; b < order; ++b) add[a][b] = g.encode(g.add(g.decode(a), g.decode(b)));
    }
  }
};

void check_cap(const Multigraph& g, const Group& group, const CensusLimits& limits) {
  const int rank = cycle_rank(g);
  const int cap = limits.cycle_rank_cap(group.order());
  if (rank > cap) {
    throw CapExceeded("cycle rank " + std::to_string(rank) + " exceeds the census cap " + std::to_string(cap) +
                      " for order " + std::to_string(group.order()) + "; use flow_polynomial or sample");
  }
}

// Depth-first walk over nonzero values of the non-loop free edges.
class Walker {
 public:
  Walker(const CoTree& ct, const Tables& tab, const std::vector<int>& loop_free)
      : ct_(ct), tab_(tab), sums_(ct.tree.size(), 0), values_(ct.free.size(), 0), order_(loop_free) {}

  // Counts completions below depth d.
  unsigned long long count(std::size_t d) {
    if (d == order_.size()) return 1;
    const int j = order_[d];
    unsigned long long total = 0;
    for (int x = 1; x < tab_.order; ++x) {
      if (assign(j, x)) total += count(d + 1);
      unassign(j, x);
    }
    return total;
  }

  bool assign(int j, int x) {
    values_[j] = x;
    for (auto [t, sign] : ct_.support[j]) sums_[t] = tab_.add[sums_[t]][sign > 0 ? x : tab_.neg[x]];
    for (int t : ct_.settled_after[j]) {
      if (sums_[t] == 0) return false;
    }
    return true;
  }

  void unassign(int j, int x) {
    for (auto [t, sign] : ct_.support[j]) sums_[t] = tab_.add[sums_[t]][sign > 0 ? tab_.neg[x] : x];
    values_[j] = 0;
  }

  const std::vector<int>& sums() const { return sums_; }
  const std::vector<int>& values() const { return values_; }

 private:
  const CoTree& ct_;
  const Tables& tab_;
  std::vector<int> sums_;
  std::vector<int> values_;
  const std::vector<int>& order_;
};

}  // namespace

int CensusLimits::cycle_rank_cap(int order) const {
  if (order >= 6) return max_cycle_rank_order6;
  if (order == 5) return max_cycle_rank_order5;
  return max_cycle_rank_small;
}

int cycle_rank(const Multigraph& g) {
  const int n = g.num_vertices();
  std::vector<int> parent(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) parent[i] = i;
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  int rank = 0;
  for (const Edge& e : g.edges()) {
    if (e.is_loop()) continue;
    const int a = find(e.tail);
    const int b = find(e.head);
    if (a == b) {
      ++rank;
    } else {
      parent[a] = b;
    }
  }
  return rank;
}

BigInt count_nz_flows(const Multigraph& g, const Group& group, const CensusLimits& limits) {
  check_cap(g, group, limits);
  const CoTree ct = build_cotree(g);
  if (!ct.unsupported_tree.empty()) return 0;  // a bridge carries zero in every flow
  const Tables tab(group);
  std::vector<int> order;
  for (std::size_t j = 0; j < ct.free.size(); ++j) {
    if (!g.edges()[ct.free[j]].is_loop()) order.push_back(static_cast<int>(j));
  }
  unsigned long long core = 0;
  const int threads = std::max(1, limits.threads);
  if (order.empty()) {
    core = 1;
  } else if (threads == 1) {
    Walker w(ct, tab, order);
    core = w.count(0);
  } else {
    // Split on the first free edge's value; partial counts summed in order.
    std::vector<unsigned long long> partial(static_cast<std::size_t>(tab.order), 0);
    std::vector<std::thread> pool;
    std::vector<int> xs;
    for (int x = 1; x < tab.order; ++x) xs.push_back(x);
    for (int start = 0; start < static_cast<int>(xs.size()); start += threads) {
      pool.clear();
      for (int i = start; i < std::min<int>(start + threads, static_cast<int>(xs.size())); ++i) {
        pool.emplace_back([&, x = xs[i]] {
          Walker w(ct, tab, order);
          if (w.assign(order[0], x)) partial[x] = w.count(1);
        });
      }
      for (auto& th : pool) th.join();
    }
    for (auto v : partial) core += v;
  }
  BigInt total = core;
  total *= boost::multiprecision::pow(BigInt(group.order() - 1), static_cast<unsigned>(ct.loops));
  return total;
}

long long enumerate_nz_flows(const Multigraph& g, const Group& group, long long limit, const FlowSink& sink,
                             const CensusLimits& limits) {
  check_cap(g, group, limits);
  const CoTree ct = build_cotree(g);
  if (!ct.unsupported_tree.empty() || limit <= 0) return 0;
  const Tables tab(group);
  std::vector<int> order;
  for (std::size_t j = 0; j < ct.free.size(); ++j) order.push_back(static_cast<int>(j));
  Walker w(ct, tab, order);
  const auto edges = g.edges();
  const auto ids = g.edge_ids();
  long long emitted = 0;
  bool stop = false;

  std::function<void(std::size_t)> rec = [&](std::size_t d) {
    if (stop) return;
    if (d == order.size()) {
      std::vector<GroupElem> vals(edges.size());
      for (std::size_t j = 0; j < ct.free.size(); ++j) vals[ct.free[j]] = group.decode(w.values()[j]);
      for (std::size_t t = 0; t < ct.tree.size(); ++t) vals[ct.tree[t]] = group.decode(w.sums()[t]);
      ++emitted;
      if (!sink(Flow(group, ids, std::move(vals))) || emitted >= limit) stop = true;
      return;
    }
    const int j = order[d];
    for (int x = 1; x < tab.order && !stop; ++x) {
      if (w.assign(j, x)) rec(d + 1);
      w.unassign(j, x);
    }
  };
  rec(0);
  return emitted;
}

std::vector<Flow> collect_nz_flows(const Multigraph& g, const Group& group, long long limit,
                                   const CensusLimits& limits) {
  std::vector<Flow> out;
  enumerate_nz_flows(
      g, group, limit,
      [&](const Flow& f) {
        out.push_back(f);
        return true;
      },
      limits);
  return out;
}

}  // namespace nzflow
