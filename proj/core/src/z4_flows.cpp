#include "nzflow/z4_flows.hpp"

#include <algorithm>
#include <climits>
#include <deque>
#include <set>
#include <unordered_set>

#include "nzflow/errors.hpp"

namespace nzflow {
namespace {

bool contains(const std::vector<EdgeId>& sorted, EdgeId id) {
  return std::binary_search(sorted.begin(), sorted.end(), id);
}

std::vector<EdgeId> sorted_copy(std::span<const EdgeId> ids) {
  std::vector<EdgeId> out(ids.begin(), ids.end());
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<int> tree_degrees(const Multigraph& g, const std::vector<EdgeId>& tree) {
  std::vector<int> deg(static_cast<std::size_t>(g.num_vertices()), 0);
  for (EdgeId id : tree) {
    ++deg[g.edge(id).tail];
    ++deg[g.edge(id).head];
  }
  return deg;
}

// Component labels of tree - v (v itself gets -1).
std::vector<int> components_without(const Multigraph& g, const std::vector<EdgeId>& tree, Vertex v) {
  const int n = g.num_vertices();
  std::vector<std::vector<Vertex>> adj(static_cast<std::size_t>(n));
  for (EdgeId id : tree) {
    const Edge& e = g.edge(id);
    if (e.tail == v || e.head == v) continue;
    adj[e.tail].push_back(e.head);
    adj[e.head].push_back(e.tail);
  }
  std::vector<int> comp(static_cast<std::size_t>(n), -1);
  int next = 0;
  for (Vertex s = 0; s < n; ++s) {
    if (s == v || comp[s] >= 0) continue;
    std::deque<Vertex> queue{s};
    comp[s] = next;
    while (!queue.empty()) {
      const Vertex a = queue.front();
      queue.pop_front();
      for (Vertex b : adj[a]) {
        if (comp[b] < 0) {
          comp[b] = next;
          queue.push_back(b);
        }
      }
    }
    ++next;
  }
  return comp;
}

std::vector<EdgeId> tree_edges_at(const Multigraph& g, const std::vector<EdgeId>& tree, Vertex v) {
  std::vector<EdgeId> out;
  for (EdgeId id : g.incident(v)) {
    if (contains(tree, id)) out.push_back(id);
  }
  return out;
}

std::vector<EdgeId> swap_edges(std::vector<EdgeId> tree, std::initializer_list<EdgeId> out,
                               std::initializer_list<EdgeId> in) {
  for (EdgeId id : out) tree.erase(std::find(tree.begin(), tree.end(), id));
  tree.insert(tree.end(), in.begin(), in.end());
  std::sort(tree.begin(), tree.end());
  return tree;
}

TreePair flip_leaf(const Multigraph& g, const TreePair& pair, Vertex v) {
  const EdgeId e1 = tree_edges_at(g, pair.t1, v).at(0);
  const Vertex u = g.edge(e1).other(v);
  const auto comp = components_without(g, pair.t2, v);
  for (EdgeId e2 : tree_edges_at(g, pair.t2, v)) {
    if (comp[g.edge(e2).other(v)] == comp[u]) {
      return {swap_edges(pair.t1, {e1}, {e2}), swap_edges(pair.t2, {e2}, {e1})};
    }
  }
  throw InvariantViolation("leaf flip found no replacement edge");
}

TreePair flip_double_two(const Multigraph& g, const TreePair& pair, Vertex v) {
  const auto at1 = tree_edges_at(g, pair.t1, v);
  const auto at2 = tree_edges_at(g, pair.t2, v);
  const auto c1 = components_without(g, pair.t1, v);
  const auto c2 = components_without(g, pair.t2, v);
  auto far = [&](EdgeId id) { return g.edge(id).other(v); };

  const bool split1 = c1[far(at2[0])] != c1[far(at2[1])];
  const bool split2 = c2[far(at1[0])] != c2[far(at1[1])];
  if (split1 && split2) {
    return {swap_edges(pair.t1, {at1[0], at1[1]}, {at2[0], at2[1]}),
            swap_edges(pair.t2, {at2[0], at2[1]}, {at1[0], at1[1]})};
  }
  for (EdgeId e : at1) {
    for (EdgeId f : at2) {
      if (c1[far(e)] == c1[far(f)] && c2[far(e)] == c2[far(f)]) {
        return {swap_edges(pair.t1, {e}, {f}), swap_edges(pair.t2, {f}, {e})};
      }
    }
  }
  throw InvariantViolation("degree-(2,2) flip found no exchange");
}

Flow z2xz2_flow(const Multigraph& g, const std::vector<std::uint8_t>& a, const std::vector<std::uint8_t>& b) {
  const Group grp = Group::z2xz2();
  std::vector<EdgeId> ids;
  std::vector<GroupElem> values;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ids.push_back(g.edges()[i].id);
    values.push_back(grp.make(a[i], b[i]));
  }
  return Flow(grp, std::move(ids), std::move(values));
}

std::vector<std::uint8_t> canonical_values(const Multigraph& g, const std::vector<EdgeId>& tree) {
  return solve_on_tree(g, tree, std::vector<std::uint8_t>(static_cast<std::size_t>(g.num_edges()), 1));
}

}  // namespace

std::vector<std::uint8_t> solve_on_tree(const Multigraph& g, std::span<const EdgeId> tree_ids,
                                        std::vector<std::uint8_t> values) {
  const std::vector<EdgeId> tree = sorted_copy(tree_ids);
  if (!is_spanning_tree(g, tree)) throw PreconditionError("edge set is not a spanning tree");
  const int n = g.num_vertices();
  std::vector<int> parity(static_cast<std::size_t>(n), 0);
  std::vector<std::vector<EdgeId>> at(static_cast<std::size_t>(n));
  for (std::size_t i = 0; i < values.size(); ++i) {
    const Edge& e = g.edges()[i];
    if (contains(tree, e.id)) {
      at[e.tail].push_back(e.id);
      at[e.head].push_back(e.id);
      continue;
    }
    if (e.is_loop() || !(values[i] & 1)) continue;
    parity[e.tail] ^= 1;
    parity[e.head] ^= 1;
  }
  std::vector<int> deg(static_cast<std::size_t>(n));
  std::deque<Vertex> leaves;
  for (Vertex v = 0; v < n; ++v) {
    deg[v] = static_cast<int>(at[v].size());
    if (deg[v] == 1) leaves.push_back(v);
  }
  std::vector<bool> done(static_cast<std::size_t>(g.next_edge_id()), false);
  while (!leaves.empty()) {
    const Vertex v = leaves.front();
    leaves.pop_front();
    if (deg[v] != 1) continue;
    const auto it = std::find_if(at[v].begin(), at[v].end(), [&](EdgeId id) { return !done[id]; });
    const EdgeId id = *it;
    done[id] = true;
    values[*g.index_of(id)] = static_cast<std::uint8_t>(parity[v]);
    const Vertex w = g.edge(id).other(v);
    parity[w] ^= parity[v];
    parity[v] = 0;
    --deg[v];
    if (--deg[w] == 1) leaves.push_back(w);
  }
  return values;
}

CanonicalFlowInfo canonical_z2_flow(const Multigraph& g, std::span<const EdgeId> tree_ids) {
  std::vector<EdgeId> tree = sorted_copy(tree_ids);
  const auto values = canonical_values(g, tree);
  const Group z2 = Group::cyclic(2);
  std::vector<EdgeId> ids;
  std::vector<GroupElem> elems;
  std::vector<EdgeId> ones;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const EdgeId id = g.edges()[i].id;
    ids.push_back(id);
    elems.push_back(z2.make(values[i]));
    if (values[i] && contains(tree, id)) ones.push_back(id);
  }
  return {std::move(tree), Flow(z2, std::move(ids), std::move(elems)), std::move(ones)};
}

int flows_from_tree_pair(const Multigraph& g, const TreePair& pair, long long limit, const FlowSink& sink) {
  if (!is_valid_tree_pair(g, pair)) throw PreconditionError("not a pair of disjoint spanning trees");
  const auto first = canonical_values(g, pair.t1);
  std::vector<EdgeId> x;
  for (EdgeId id : pair.t1) {
    if (first[*g.index_of(id)]) x.push_back(id);
  }
  const int q = static_cast<int>(x.size());

  // Base second coordinate: 1 on everything outside t2 except X.
  std::vector<std::uint8_t> base(static_cast<std::size_t>(g.num_edges()), 1);
  for (EdgeId id : x) base[*g.index_of(id)] = 0;

  long long emitted = 0;
  for (unsigned long long mask = 0; emitted < limit; ++mask) {
    if (q < 64 && (mask >> q) != 0) break;
    std::vector<std::uint8_t> second = base;
    for (int j = 0; j < q && j < 64; ++j) second[*g.index_of(x[j])] = static_cast<std::uint8_t>((mask >> j) & 1ULL);
    second = solve_on_tree(g, pair.t2, std::move(second));
    for (std::size_t i = 0; i < second.size(); ++i) {
      const EdgeId id = g.edges()[i].id;
      if (!second[i] && !contains(x, id) && !contains(pair.t2, id)) {
        throw InvariantViolation("second coordinate vanishes outside X and t2");
      }
    }
    ++emitted;
    if (!sink(z2xz2_flow(g, first, second))) break;
  }
  return q;
}

TreePair flip_at(const Multigraph& g, const TreePair& pair, Vertex v) {
  const auto d1 = tree_degrees(g, pair.t1);
  const auto d2 = tree_degrees(g, pair.t2);
  if (d1[v] == 1) return flip_leaf(g, pair, v);
  if (d1[v] == 2 && d2[v] == 2) return flip_double_two(g, pair, v);
  if (d2[v] == 1) {
    TreePair mirrored = flip_leaf(g, {pair.t2, pair.t1}, v);
    return {std::move(mirrored.t2), std::move(mirrored.t1)};
  }
  throw PreconditionError("vertex " + std::to_string(v) + " is neither a leaf nor of degree 2 in both trees");
}

FlipAnalysis analyse_flips(const Multigraph& g, const TreePair& pair) {
  const int n = g.num_vertices();
  const auto d1 = tree_degrees(g, pair.t1);
  const auto d2 = tree_degrees(g, pair.t2);
  FlipAnalysis a;
  std::vector<bool> candidate(static_cast<std::size_t>(n), false);
  for (Vertex v = 0; v < n; ++v) {
    if (d1[v] == 1) a.L1.push_back(v);
    if (d2[v] == 1) a.L2.push_back(v);
    if (d1[v] == 2 && d2[v] == 2) a.V4.push_back(v);
    candidate[v] = d1[v] == 1 || d2[v] == 1 || (d1[v] == 2 && d2[v] == 2);
  }

  // Degeneracy order of t1 + t2, then greedy colouring in reverse.
  std::vector<std::vector<Vertex>> adj(static_cast<std::size_t>(n));
  for (const auto* tree : {&pair.t1, &pair.t2}) {
    for (EdgeId id : *tree) {
      adj[g.edge(id).tail].push_back(g.edge(id).head);
      adj[g.edge(id).head].push_back(g.edge(id).tail);
    }
  }
  std::vector<int> deg(static_cast<std::size_t>(n));
  for (Vertex v = 0; v < n; ++v) deg[v] = static_cast<int>(adj[v].size());
  std::vector<bool> removed(static_cast<std::size_t>(n), false);
  std::vector<Vertex> order;
  for (int step = 0; step < n; ++step) {
    Vertex best = -1;
    for (Vertex v = 0; v < n; ++v) {
      if (!removed[v] && (best < 0 || deg[v] < deg[best])) best = v;
    }
    removed[best] = true;
    order.push_back(best);
    for (Vertex w : adj[best]) --deg[w];
  }
  std::vector<int> colour(static_cast<std::size_t>(n), -1);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    std::set<int> taken;
    for (Vertex w : adj[*it]) taken.insert(colour[w]);
    int c = 0;
    while (taken.count(c)) ++c;
    colour[*it] = c;
  }
  const int colours = n ? *std::max_element(colour.begin(), colour.end()) + 1 : 0;
  if (colours > 4) throw InvariantViolation("union of two trees needed more than four colours");
  int best_colour = -1;
  std::size_t best_size = 0;
  for (int c = 0; c < colours; ++c) {
    std::size_t size = 0;
    for (Vertex v = 0; v < n; ++v) size += (candidate[v] && colour[v] == c) ? 1 : 0;
    if (best_colour < 0 || size > best_size) {
      best_colour = c;
      best_size = size;
    }
  }
  for (Vertex v = 0; v < n; ++v) {
    if (candidate[v] && colour[v] == best_colour) a.X.push_back(v);
  }
  return a;
}

BigInt tree_pair_guarantee(const FlipAnalysis& a, int n) {
  const long long n1 = static_cast<long long>(a.L1.size());
  const long long n2 = static_cast<long long>(a.L2.size());
  // Doubled to stay integral: max(2(n - n1 - n2), n1 + n2) / 8, rounded up.
  const long long doubled = std::max(2 * (n - n1 - n2), n1 + n2);
  const long long t = doubled <= 0 ? 0 : (doubled + 7) / 8;
  return BigInt(1) << static_cast<unsigned>(t);
}

long long tree_pair_family(const Multigraph& g, const TreePair& pair, long long limit, const TreePairSink& sink) {
  if (!is_valid_tree_pair(g, pair)) throw PreconditionError("not a pair of disjoint spanning trees");
  std::vector<EdgeId> both = pair.t1;
  both.insert(both.end(), pair.t2.begin(), pair.t2.end());
  std::sort(both.begin(), both.end());
  std::vector<EdgeId> others;
  for (const Edge& e : g.edges()) {
    if (!contains(both, e.id)) others.push_back(e.id);
  }
  const Multigraph h = g.without_edges(others);
  const FlipAnalysis a = analyse_flips(h, pair);
  const std::size_t r = a.X.size();

  std::set<TreePair> seen;
  long long emitted = 0;
  for (unsigned long long mask = 0; emitted < limit; ++mask) {
    if (r < 64 && (mask >> r) != 0) break;
    TreePair cur = pair;
    for (std::size_t j = 0; j < r && j < 64; ++j) {
      if ((mask >> j) & 1ULL) cur = flip_at(h, cur, a.X[j]);
    }
    if (!seen.insert(cur).second) continue;
    ++emitted;
    if (!sink(cur)) break;
  }
  return emitted;
}

long long z4_family_dense(const Multigraph& g, const TreePair& pair, long long limit, const FlowSink& sink) {
  if (!is_valid_tree_pair(g, pair)) throw PreconditionError("not a pair of disjoint spanning trees");
  const std::size_t m = static_cast<std::size_t>(g.num_edges());
  std::vector<std::size_t> leftover;
  std::vector<std::uint8_t> a(m, 0), b(m, 0);
  for (std::size_t i = 0; i < m; ++i) {
    const EdgeId id = g.edges()[i].id;
    if (contains(pair.t1, id)) {
      a[i] = 1;
    } else if (contains(pair.t2, id)) {
      b[i] = 1;
    } else {
      leftover.push_back(i);
    }
  }
  static constexpr std::uint8_t kChoices[3][2] = {{1, 0}, {0, 1}, {1, 1}};
  std::vector<int> digit(leftover.size(), 0);
  long long emitted = 0;
  while (emitted < limit) {
    for (std::size_t j = 0; j < leftover.size(); ++j) {
      a[leftover[j]] = kChoices[digit[j]][0];
      b[leftover[j]] = kChoices[digit[j]][1];
    }
    const auto first = solve_on_tree(g, pair.t2, a);
    const auto second = solve_on_tree(g, pair.t1, b);
    ++emitted;
    if (!sink(z2xz2_flow(g, first, second))) break;
    std::size_t j = leftover.size();
    while (j > 0 && ++digit[j - 1] == 3) digit[--j] = 0;
    if (j == 0) break;
  }
  return emitted;
}

Flow canonical_pair_flow(const Multigraph& g, const TreePair& pair) {
  return z2xz2_flow(g, canonical_values(g, pair.t1), canonical_values(g, pair.t2));
}

Z4FamilyStats z4_flow_family(const Multigraph& g, long long limit, const FlowSink& sink,
                             const Z4FamilyOptions& options) {
  auto packing = pack_two_spanning_trees(g);
  if (!packing) throw PreconditionError("graph has no two disjoint spanning trees");
  Z4FamilyStats stats;
  stats.packing = *packing;
  const int n = g.num_vertices();
  stats.dense_count = BigInt(1);
  for (int i = 0; i < g.num_edges() - 2 * n + 2; ++i) stats.dense_count *= 3;
  if (limit <= 0) return stats;

  std::unordered_set<std::string> seen;
  bool stop = false;
  const FlowSink dedup = [&](const Flow& f) {
    if (stop) return false;
    if (!seen.insert(f.serialize()).second) return true;
    ++stats.emitted;
    if (!sink(f) || stats.emitted >= limit) stop = true;
    return !stop;
  };

  z4_family_dense(g, *packing, LLONG_MAX, dedup);

  std::vector<TreePair> family;
  TreePair best = *packing;
  stats.best_q = -1;
  tree_pair_family(g, *packing, options.pair_scan_limit, [&](const TreePair& p) {
    family.push_back(p);
    for (const TreePair& ordered : {p, TreePair{p.t2, p.t1}}) {
      const int q = canonical_z2_flow(g, ordered.t1).q();
      if (q > stats.best_q) {
        stats.best_q = q;
        best = ordered;
      }
    }
    return true;
  });
  stats.pairs_scanned = static_cast<long long>(family.size());

  if (!stop) flows_from_tree_pair(g, best, LLONG_MAX, dedup);
  for (const TreePair& p : family) {
    if (stop) break;
    dedup(canonical_pair_flow(g, p));
  }
  return stats;
}

}  // namespace nzflow
