#include "nzflow/connectivity.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <string>

#include "nzflow/maxflow.hpp"
#include "nzflow/surgery.hpp"

namespace nzflow {
namespace {

std::vector<bool> component_of(const Multigraph& g, Vertex start) {
  std::vector<bool> seen(static_cast<std::size_t>(g.num_vertices()), false);
  std::vector<Vertex> stack{start};
  seen[start] = true;
  while (!stack.empty()) {
    const Vertex u = stack.back();
    stack.pop_back();
    for (EdgeId id : g.incident(u)) {
      const Vertex w = g.edge(id).other(u);
      if (!seen[w]) {
        seen[w] = true;
        stack.push_back(w);
      }
    }
  }
  return seen;
}

// All-pairs lambda for s < t, capped at `cap` (lambda never needs to exceed it).
std::vector<std::vector<int>> all_pairs_lambda(const Multigraph& g, int cap) {
  const int n = g.num_vertices();
  std::vector<std::vector<int>> lam(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n), 0));
  for (Vertex s = 0; s < n; ++s) {
    for (Vertex t = s + 1; t < n; ++t) {
      UnitFlowNetwork net(g);
      lam[s][t] = lam[t][s] = net.max_flow(s, t, cap);
    }
  }
  return lam;
}

}  // namespace

CutCertificate CutCertificate::of(const Multigraph& g, const std::vector<bool>& mask) {
  CutCertificate c;
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    if (mask[v]) c.side.push_back(v);
  }
  c.crossing_edges = g.cut_edges(mask);
  return c;
}

std::vector<bool> CutCertificate::mask(int n) const {
  std::vector<bool> m(static_cast<std::size_t>(n), false);
  for (Vertex v : side) m[v] = true;
  return m;
}

int local_edge_connectivity(const Multigraph& g, Vertex s, Vertex t) {
  if (s == t) throw PreconditionError("local edge connectivity needs s != t");
  UnitFlowNetwork net(g);
  return net.max_flow(s, t);
}

GlobalCut edge_connectivity(const Multigraph& g) {
  const int n = g.num_vertices();
  if (n < 2) throw PreconditionError("edge connectivity needs at least two vertices");
  std::vector<bool> comp = component_of(g, 0);
  if (std::find(comp.begin(), comp.end(), false) != comp.end()) {
    return {0, CutCertificate::of(g, comp)};
  }
  GlobalCut best{UnitFlowNetwork::kInfinite, {}};
  for (Vertex t = 1; t < n; ++t) {
    UnitFlowNetwork net(g);
    const int f = net.max_flow(0, t, best.value);
    if (f < best.value) {
      auto side = net.residual_reachable(0);
      side.resize(static_cast<std::size_t>(n));
      best = {f, CutCertificate::of(g, side)};
    }
  }
  return best;
}

bool is_k_edge_connected(const Multigraph& g, int k) {
  if (g.num_vertices() <= 1) return true;
  const int n = g.num_vertices();
  for (Vertex t = 1; t < n; ++t) {
    UnitFlowNetwork net(g);
    if (net.max_flow(0, t, k) < k) return false;
  }
  return true;
}

std::optional<CutCertificate> min_cut_between(const Multigraph& g, std::span<const Vertex> sources,
                                              std::span<const Vertex> sinks, int max_size) {
  UnitFlowNetwork net(g);
  const int src = net.add_node();
  const int snk = net.add_node();
  for (Vertex s : sources) net.add_arc(src, s, UnitFlowNetwork::kInfinite);
  for (Vertex t : sinks) net.add_arc(t, snk, UnitFlowNetwork::kInfinite);
  const int f = net.max_flow(src, snk, max_size + 1);
  if (f > max_size) return std::nullopt;
  auto side = net.residual_reachable(src);
  side.resize(static_cast<std::size_t>(g.num_vertices()));
  return CutCertificate::of(g, side);
}

std::optional<CutCertificate> find_nontrivial_cut(const Multigraph& g, int max_size, Vertex outside) {
  const int n = g.num_vertices();
  if (n < 4) return std::nullopt;
  for (Vertex a = 0; a < n; ++a) {
    if (a == outside) continue;
    for (Vertex b = a + 1; b < n; ++b) {
      if (b == outside) continue;
      for (Vertex c = 0; c < n; ++c) {
        if (c == outside || c == a || c == b) continue;
        const Vertex src[] = {a, b};
        const Vertex snk[] = {outside, c};
        if (auto cut = min_cut_between(g, src, snk, max_size)) return cut;
      }
    }
  }
  return std::nullopt;
}

std::vector<EdgeId> bridges(const Multigraph& g) {
  const int n = g.num_vertices();
  std::vector<int> disc(static_cast<std::size_t>(n), -1);
  std::vector<int> low(static_cast<std::size_t>(n), 0);
  std::vector<EdgeId> out;
  int timer = 0;
  // Iterative DFS; the parent edge is skipped by id so parallel edges count.
  struct Frame {
    Vertex v;
    EdgeId via;
    std::size_t next;
  };
  for (Vertex root = 0; root < n; ++root) {
    if (disc[root] >= 0) continue;
    std::vector<Frame> stack{{root, -1, 0}};
    disc[root] = low[root] = timer++;
    while (!stack.empty()) {
      Frame& f = stack.back();
      const auto& inc = g.incident(f.v);
      if (f.next < inc.size()) {
        const EdgeId id = inc[f.next++];
        const Edge& e = g.edge(id);
        if (e.is_loop() || id == f.via) continue;
        const Vertex w = e.other(f.v);
        if (disc[w] < 0) {
          disc[w] = low[w] = timer++;
          stack.push_back({w, id, 0});
        } else {
          low[f.v] = std::min(low[f.v], disc[w]);
        }
      } else {
        const Frame done = f;
        stack.pop_back();
        if (!stack.empty()) {
          Vertex parent = stack.back().v;
          low[parent] = std::min(low[parent], low[done.v]);
          if (low[done.v] > disc[parent]) out.push_back(done.via);
        }
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Vertex> leaf_2ec_component(const Multigraph& g, const std::vector<bool>& covered) {
  const int n = g.num_vertices();
  // Induced subgraph on the uncovered vertices, keeping original edge ids.
  std::vector<Vertex> to_sub(static_cast<std::size_t>(n), -1);
  std::vector<Vertex> to_orig;
  for (Vertex v = 0; v < n; ++v) {
    if (!covered[v]) {
      to_sub[v] = static_cast<Vertex>(to_orig.size());
      to_orig.push_back(v);
    }
  }
  if (to_orig.empty()) throw PreconditionError("leaf_2ec_component: every vertex is covered");
  GraphBuilder b(static_cast<int>(to_orig.size()), g.next_edge_id());
  for (const Edge& e : g.edges()) {
    if (!covered[e.tail] && !covered[e.head]) b.keep_edge(e.id, to_sub[e.tail], to_sub[e.head]);
  }
  const Multigraph sub = std::move(b).build();
  const auto br = bridges(sub);
  const Multigraph no_bridges = sub.without_edges(br);

  const int sn = sub.num_vertices();
  std::vector<int> comp(static_cast<std::size_t>(sn), -1);
  int ncomp = 0;
  for (Vertex v = 0; v < sn; ++v) {
    if (comp[v] >= 0) continue;
    auto mask = component_of(no_bridges, v);
    for (Vertex x = 0; x < sn; ++x) {
      if (mask[x]) comp[x] = ncomp;
    }
    ++ncomp;
  }
  std::vector<int> bridge_degree(static_cast<std::size_t>(ncomp), 0);
  for (EdgeId id : br) {
    const Edge& e = sub.edge(id);
    ++bridge_degree[comp[e.tail]];
    ++bridge_degree[comp[e.head]];
  }
  // Components are numbered by their lowest vertex, so the first leaf wins ties.
  for (int c = 0; c < ncomp; ++c) {
    if (bridge_degree[c] <= 1) {
      std::vector<Vertex> out;
      for (Vertex x = 0; x < sn; ++x) {
        if (comp[x] == c) out.push_back(to_orig[x]);
      }
      return out;
    }
  }
  throw InvariantViolation("bridge forest without a leaf");
}

bool is_splittable_pair(const Multigraph& g, Vertex v, EdgeId e1, EdgeId e2) {
  const int n = g.num_vertices();
  const auto before = all_pairs_lambda(g, UnitFlowNetwork::kInfinite);
  const Surgery s = lift_pair(g, v, e1, e2);
  for (Vertex a = 0; a < n; ++a) {
    for (Vertex b = a + 1; b < n; ++b) {
      if (a == v || b == v) continue;
      UnitFlowNetwork net(s.graph);
      if (net.max_flow(s.step.vertex_map[a], s.step.vertex_map[b], before[a][b]) < before[a][b]) return false;
    }
  }
  return true;
}

std::pair<EdgeId, EdgeId> find_splittable_pair(const Multigraph& g, Vertex v) {
  const int d = g.degree(v);
  if (d != 2 && d < 4) throw PreconditionError("splitting needs degree 2 or at least 4");
  const auto br = bridges(g);
  std::vector<EdgeId> candidates;
  for (EdgeId id : g.incident(v)) {
    if (std::binary_search(br.begin(), br.end(), id)) throw PreconditionError("vertex is incident with a cut-edge");
    if (!g.edge(id).is_loop()) candidates.push_back(id);
  }
  const int n = g.num_vertices();
  const auto before = all_pairs_lambda(g, UnitFlowNetwork::kInfinite);
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    for (std::size_t j = i + 1; j < candidates.size(); ++j) {
      const Surgery s = lift_pair(g, v, candidates[i], candidates[j]);
      bool ok = true;
      for (Vertex a = 0; a < n && ok; ++a) {
        for (Vertex b = a + 1; b < n && ok; ++b) {
          if (a == v || b == v) continue;
          UnitFlowNetwork net(s.graph);
          ok = net.max_flow(s.step.vertex_map[a], s.step.vertex_map[b], before[a][b]) >= before[a][b];
        }
      }
      if (ok) return {candidates[i], candidates[j]};
    }
  }
  throw InvariantViolation("Mader violation: no splittable pair at vertex " + std::to_string(v));
}

std::pair<EdgeId, EdgeId> find_splittable_pair_preserving_k(const Multigraph& g, Vertex v, int k) {
  if (k < 2) throw PreconditionError("k must be at least 2");
  if (g.degree(v) < k + 2) throw PreconditionError("vertex degree below k + 2");
  if (!is_k_edge_connected(g, k)) throw PreconditionError("graph is not k-edge-connected");
  std::vector<EdgeId> candidates;
  for (EdgeId id : g.incident(v)) {
    if (!g.edge(id).is_loop()) candidates.push_back(id);
  }
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    for (std::size_t j = i + 1; j < candidates.size(); ++j) {
      const Surgery s = lift_pair(g, v, candidates[i], candidates[j]);
      if (is_k_edge_connected(s.graph, k)) return {candidates[i], candidates[j]};
    }
  }
  throw InvariantViolation("corollary violation: no connectivity-preserving lift at vertex " + std::to_string(v));
}

std::optional<CutCertificate> six_split_blocker(const Multigraph& g, Vertex v, EdgeId e1, EdgeId e2) {
  const Surgery s = lift_pair(g, v, e1, e2);
  const Multigraph& h = s.graph;
  const int n = g.num_vertices();
  // Any cut other than the one around v separates some vertex from the
  // lowest vertex different from v.
  Vertex anchor = -1;
  for (Vertex x = 0; x < n; ++x) {
    if (x != v) {
      anchor = x;
      break;
    }
  }
  for (Vertex t = 0; t < n; ++t) {
    if (t == v || t == anchor) continue;
    UnitFlowNetwork net(h);
    const int a = s.step.vertex_map[anchor];
    if (net.max_flow(a, s.step.vertex_map[t], 6) >= 6) continue;
    auto reach = net.residual_reachable(a);
    std::vector<bool> side(static_cast<std::size_t>(n), false);
    for (Vertex x = 0; x < n; ++x) {
      const Vertex y = s.step.vertex_map[x];
      side[x] = y >= 0 && reach[y];
    }
    if (side[v]) side.flip();
    return CutCertificate::of(g, side);
  }
  return std::nullopt;
}

std::variant<std::pair<EdgeId, EdgeId>, CutCertificate> find_6splittable_pair(const Multigraph& g, Vertex v,
                                                                              std::span<const EdgeId> excluding) {
  std::vector<EdgeId> candidates;
  for (EdgeId id : g.incident(v)) {
    if (g.edge(id).is_loop()) continue;
    if (std::find(excluding.begin(), excluding.end(), id) != excluding.end()) continue;
    candidates.push_back(id);
  }
  std::optional<CutCertificate> first_block;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    for (std::size_t j = i + 1; j < candidates.size(); ++j) {
      const Vertex a = g.edge(candidates[i]).other(v);
      const Vertex b = g.edge(candidates[j]).other(v);
      if (a == b) continue;
      auto block = six_split_blocker(g, v, candidates[i], candidates[j]);
      if (!block) return std::pair{candidates[i], candidates[j]};
      if (!first_block) first_block = std::move(block);
    }
  }
  if (!first_block) throw PreconditionError("no candidate pair with distinct far ends");
  return *first_block;
}

std::vector<EdgeId> maximal_removable_set(const Multigraph& g, int k) {
  std::vector<EdgeId> removed;
  Multigraph cur = g;
  for (const Edge& e : g.edges()) {
    const EdgeId ids[] = {e.id};
    Multigraph next = cur.without_edges(ids);
    if (is_k_edge_connected(next, k)) {
      removed.push_back(e.id);
      cur = std::move(next);
    }
  }
  return removed;
}

bool is_minimally_k_edge_connected(const Multigraph& g, int k) {
  if (!is_k_edge_connected(g, k)) return false;
  for (const Edge& e : g.edges()) {
    const EdgeId ids[] = {e.id};
    if (is_k_edge_connected(g.without_edges(ids), k)) return false;
  }
  return true;
}

bool is_spanning_tree(const Multigraph& g, std::span<const EdgeId> edges) {
  const int n = g.num_vertices();
  if (static_cast<int>(edges.size()) != std::max(n - 1, 0)) return false;
  std::vector<int> parent(static_cast<std::size_t>(n));
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  for (EdgeId id : edges) {
    if (!g.has_edge(id)) return false;
    const Edge& e = g.edge(id);
    const int a = find(e.tail);
    const int b = find(e.head);
    if (a == b) return false;
    parent[a] = b;
  }
  return true;
}

bool is_valid_tree_pair(const Multigraph& g, const TreePair& p) {
  if (!is_spanning_tree(g, p.t1) || !is_spanning_tree(g, p.t2)) return false;
  std::vector<EdgeId> a = p.t1;
  std::vector<EdgeId> b = p.t2;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::vector<EdgeId> common;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(common));
  return common.empty();
}

std::optional<TreePair> pack_two_spanning_trees(const Multigraph& g) {
  const int n = g.num_vertices();
  const auto edges = g.edges();
  const std::size_t m = edges.size();
  if (n <= 1) return TreePair{};
  if (static_cast<int>(m) < 2 * (n - 1)) return std::nullopt;

  // owner[i] in {-1, 0, 1}: which forest holds edges[i].
  std::vector<int> owner(m, -1);

  // Edge indices on the forest path between a and b, or nullopt if a and b
  // lie in different trees of the forest.
  auto forest_path = [&](int forest, Vertex a, Vertex b) -> std::optional<std::vector<std::size_t>> {
    std::vector<std::vector<std::pair<Vertex, std::size_t>>> adj(static_cast<std::size_t>(n));
    for (std::size_t i = 0; i < m; ++i) {
      if (owner[i] == forest) {
        adj[edges[i].tail].push_back({edges[i].head, i});
        adj[edges[i].head].push_back({edges[i].tail, i});
      }
    }
    std::vector<std::pair<Vertex, std::size_t>> parent(static_cast<std::size_t>(n), {-1, 0});
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    std::vector<Vertex> queue{a};
    seen[a] = true;
    for (std::size_t h = 0; h < queue.size(); ++h) {
      const Vertex u = queue[h];
      for (auto [w, idx] : adj[u]) {
        if (!seen[w]) {
          seen[w] = true;
          parent[w] = {u, idx};
          queue.push_back(w);
        }
      }
    }
    if (!seen[b]) return std::nullopt;
    std::vector<std::size_t> path;
    for (Vertex x = b; x != a; x = parent[x].first) path.push_back(parent[x].second);
    std::sort(path.begin(), path.end());
    return path;
  };

  for (std::size_t start = 0; start < m; ++start) {
    if (edges[start].is_loop()) continue;
    std::vector<long> via(m, -1);
    std::vector<bool> labelled(m, false);
    std::vector<std::size_t> queue{start};
    labelled[start] = true;
    bool done = false;
    for (std::size_t h = 0; h < queue.size() && !done; ++h) {
      const std::size_t x = queue[h];
      for (int f = 0; f < 2 && !done; ++f) {
        if (owner[x] == f) continue;
        auto path = forest_path(f, edges[x].tail, edges[x].head);
        if (!path) {
          // Shift along the labelled chain: x enters f, each predecessor
          // takes the slot its successor vacated.
          std::size_t cur = x;
          int target = f;
          for (;;) {
            const int old = owner[cur];
            owner[cur] = target;
            if (cur == start) break;
            target = old;
            cur = static_cast<std::size_t>(via[cur]);
          }
          done = true;
          break;
        }
        for (std::size_t y : *path) {
          if (!labelled[y]) {
            labelled[y] = true;
            via[y] = static_cast<long>(x);
            queue.push_back(y);
          }
        }
      }
    }
  }

  TreePair p;
  for (std::size_t i = 0; i < m; ++i) {
    if (owner[i] == 0) p.t1.push_back(edges[i].id);
    if (owner[i] == 1) p.t2.push_back(edges[i].id);
  }
  const bool full = static_cast<int>(p.t1.size()) == n - 1 && static_cast<int>(p.t2.size()) == n - 1;
  if (!full) return std::nullopt;
  if (!is_valid_tree_pair(g, p)) throw InvariantViolation("tree packing produced an invalid pair");
  return p;
}

}  // namespace nzflow
