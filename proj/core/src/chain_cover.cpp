#include "nzflow/chain_cover.hpp"

#include <algorithm>
#include <climits>
#include <deque>
#include <functional>
#include <map>
#include <numeric>
#include <unordered_set>

#include "nzflow/connectivity.hpp"
#include "nzflow/errors.hpp"
#include "nzflow/maxflow.hpp"

namespace nzflow {
namespace {

struct UnionFind {
  explicit UnionFind(int n) : parent(static_cast<std::size_t>(n)) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[std::max(a, b)] = std::min(a, b);
    return true;
  }
  std::vector<int> parent;
};

Vertex start_of(const Multigraph& g, DirectedEdge d) {
  const Edge& e = g.edge(d.id);
  return d.forward ? e.tail : e.head;
}

Vertex end_of(const Multigraph& g, DirectedEdge d) {
  const Edge& e = g.edge(d.id);
  return d.forward ? e.head : e.tail;
}

// Lowest-id edge runs forward.
void normalise_cycle(std::vector<DirectedEdge>& cycle) {
  auto lowest = std::min_element(cycle.begin(), cycle.end(),
                                 [](const DirectedEdge& a, const DirectedEdge& b) { return a.id < b.id; });
  if (lowest->forward) return;
  std::reverse(cycle.begin(), cycle.end());
  for (auto& d : cycle) d.forward = !d.forward;
}

// Shortest path from s to t avoiding `skip` and loops, as directed edges.
std::optional<std::vector<DirectedEdge>> bfs_path(const Multigraph& g, Vertex s, Vertex t, EdgeId skip) {
  const int n = g.num_vertices();
  std::vector<EdgeId> via(static_cast<std::size_t>(n), -1);
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  std::deque<Vertex> queue{s};
  seen[s] = true;
  while (!queue.empty()) {
    const Vertex a = queue.front();
    queue.pop_front();
    if (a == t) break;
    for (EdgeId id : g.incident(a)) {
      const Edge& e = g.edge(id);
      if (id == skip || e.is_loop()) continue;
      const Vertex b = e.other(a);
      if (seen[b]) continue;
      seen[b] = true;
      via[b] = id;
      queue.push_back(b);
    }
  }
  if (!seen[t]) return std::nullopt;
  std::vector<DirectedEdge> path;
  for (Vertex cur = t; cur != s;) {
    const Edge& e = g.edge(via[cur]);
    const Vertex prev = e.other(cur);
    path.push_back({e.id, e.tail == prev && e.head == cur});
    cur = prev;
  }
  std::reverse(path.begin(), path.end());
  return path;
}

std::vector<DirectedEdge> shortest_cycle(const Multigraph& g) {
  std::optional<std::vector<DirectedEdge>> best;
  for (const Edge& e : g.edges()) {
    if (e.is_loop()) continue;
    auto back = bfs_path(g, e.head, e.tail, e.id);
    if (!back) continue;
    if (!best || back->size() + 1 < best->size()) {
      std::vector<DirectedEdge> cycle{{e.id, true}};
      cycle.insert(cycle.end(), back->begin(), back->end());
      best = std::move(cycle);
      if (best->size() == 2) break;
    }
  }
  if (!best) throw PreconditionError("graph has no cycle apart from loops");
  normalise_cycle(*best);
  return *best;
}

std::vector<EdgeId> complement(const Multigraph& g, const std::vector<EdgeId>& keep) {
  std::vector<EdgeId> out;
  for (const Edge& e : g.edges()) {
    if (!std::binary_search(keep.begin(), keep.end(), e.id)) out.push_back(e.id);
  }
  return out;
}

int two_path_flow(const Multigraph& g, const std::vector<EdgeId>& allowed, Vertex u, Vertex v) {
  UnitFlowNetwork net(g, complement(g, allowed));
  return net.max_flow(u, v, 2);
}

// Splits a minimal two-path subgraph into its blocks, each a directed cycle.
std::vector<std::vector<DirectedEdge>> chain_blocks(const Multigraph& g, const std::vector<EdgeId>& edges, Vertex u,
                                                    Vertex v) {
  std::map<Vertex, std::vector<EdgeId>> inc;
  for (EdgeId id : edges) {
    const Edge& e = g.edge(id);
    inc[e.tail].push_back(id);
    inc[e.head].push_back(id);
  }
  for (auto& [x, ids] : inc) {
    std::sort(ids.begin(), ids.end());
    const auto d = ids.size();
    if (d != 2 && d != 4) throw InvariantViolation("chain vertex of degree " + std::to_string(d));
    if ((x == u || x == v) && d != 2) throw InvariantViolation("chain end of degree 4");
  }
  auto is_branch = [&](Vertex x) { return x == u || x == v || inc[x].size() == 4; };

  struct Segment {
    Vertex from;
    Vertex to;
    std::vector<DirectedEdge> path;
  };
  std::vector<Segment> segments;
  std::unordered_set<EdgeId> used;
  for (auto& [b, ids] : inc) {
    if (!is_branch(b)) continue;
    for (EdgeId first : ids) {
      if (used.count(first)) continue;
      Segment seg{b, b, {}};
      Vertex cur = b;
      EdgeId id = first;
      while (true) {
        used.insert(id);
        const Edge& e = g.edge(id);
        const Vertex next = e.other(cur);
        seg.path.push_back({id, e.tail == cur});
        cur = next;
        if (is_branch(cur)) break;
        const auto& around = inc[cur];
        id = around[0] == id ? around[1] : around[0];
      }
      seg.to = cur;
      segments.push_back(std::move(seg));
    }
  }

  std::map<std::pair<Vertex, Vertex>, std::vector<std::size_t>> by_ends;
  for (std::size_t i = 0; i < segments.size(); ++i) {
    by_ends[std::minmax(segments[i].from, segments[i].to)].push_back(i);
  }
  std::vector<std::vector<DirectedEdge>> blocks;
  for (auto& [ends, idx] : by_ends) {
    if (idx.size() != 2 || ends.first == ends.second) throw InvariantViolation("subgraph is not a chain");
    const Segment& a = segments[idx[0]];
    Segment b = segments[idx[1]];
    if (b.from == a.from) {
      std::reverse(b.path.begin(), b.path.end());
      for (auto& d : b.path) d.forward = !d.forward;
    }
    std::vector<DirectedEdge> cycle = a.path;
    cycle.insert(cycle.end(), b.path.begin(), b.path.end());
    normalise_cycle(cycle);
    blocks.push_back(std::move(cycle));
  }
  std::sort(blocks.begin(), blocks.end(), [](const auto& x, const auto& y) {
    auto lo = [](const auto& c) {
      return std::min_element(c.begin(), c.end(), [](auto& s, auto& t) { return s.id < t.id; })->id;
    };
    return lo(x) < lo(y);
  });
  return blocks;
}

void fill_from_cycles(const Multigraph& g, Chain& c) {
  std::vector<Vertex> verts{c.u, c.v};
  for (const auto& cyc : c.cycles) {
    for (const auto& d : cyc) {
      c.edge_ids.push_back(d.id);
      verts.push_back(g.edge(d.id).tail);
      verts.push_back(g.edge(d.id).head);
    }
  }
  std::sort(c.edge_ids.begin(), c.edge_ids.end());
  std::sort(verts.begin(), verts.end());
  verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
  c.vertices = std::move(verts);
}

Chain grow_chain(const Multigraph& g, const std::vector<bool>& covered) {
  const std::vector<Vertex> q = leaf_2ec_component(g, covered);
  std::vector<bool> in_q(static_cast<std::size_t>(g.num_vertices()), false);
  for (Vertex x : q) in_q[x] = true;

  std::vector<EdgeId> attach;
  for (const Edge& e : g.edges()) {
    if ((in_q[e.tail] && covered[e.head]) || (in_q[e.head] && covered[e.tail])) attach.push_back(e.id);
    if (attach.size() == 2) break;
  }
  if (attach.size() < 2) throw InvariantViolation("leaf component with fewer than two edges to the cover");

  Chain c;
  const Edge& a1 = g.edge(attach[0]);
  const Edge& a2 = g.edge(attach[1]);
  c.in_anchor = a1.id;
  c.out_anchor = a2.id;
  c.u = in_q[a1.tail] ? a1.tail : a1.head;
  c.x = a1.other(c.u);
  c.v = in_q[a2.tail] ? a2.tail : a2.head;
  c.y = a2.other(c.v);

  if (c.u == c.v) {
    c.kind = ChainKind::kSingleVertex;
    c.vertices = {c.u};
    return c;
  }

  std::vector<EdgeId> inside;
  for (const Edge& e : g.edges()) {
    if (!e.is_loop() && in_q[e.tail] && in_q[e.head]) inside.push_back(e.id);
  }
  UnitFlowNetwork net(g, complement(g, inside));
  if (net.max_flow(c.u, c.v, 2) != 2) throw InvariantViolation("leaf component is not 2-edge-connected");
  std::vector<EdgeId> support;
  for (auto [id, fwd] : net.used_edges()) support.push_back(id);
  std::sort(support.begin(), support.end());

  for (EdgeId id : std::vector<EdgeId>(support)) {
    std::vector<EdgeId> trial;
    std::copy_if(support.begin(), support.end(), std::back_inserter(trial), [&](EdgeId x) { return x != id; });
    if (two_path_flow(g, trial, c.u, c.v) == 2) support = std::move(trial);
  }

  c.kind = ChainKind::kProperChain;
  c.cycles = chain_blocks(g, support, c.u, c.v);
  fill_from_cycles(g, c);
  return c;
}

// Directed graph of chain cycles and anchors.
class DirectedCover {
 public:
  DirectedCover(const Multigraph& g, const ChainCover& cover) : g_(g), out_(static_cast<std::size_t>(g.num_vertices())) {
    for (const Chain& c : cover.chains) {
      for (const auto& cyc : c.cycles) {
        for (const auto& d : cyc) add(d);
      }
      if (c.in_anchor >= 0) {
        add(in_anchor(c));
        add(out_anchor(c));
      }
    }
    for (auto& arcs : out_) {
      std::sort(arcs.begin(), arcs.end(), [](const DirectedEdge& a, const DirectedEdge& b) { return a.id < b.id; });
    }
  }

  DirectedEdge in_anchor(const Chain& c) const {
    const Edge& e = g_.edge(c.in_anchor);
    return {e.id, e.tail == c.x};
  }
  DirectedEdge out_anchor(const Chain& c) const {
    const Edge& e = g_.edge(c.out_anchor);
    return {e.id, e.tail == c.v};
  }

  std::optional<std::vector<DirectedEdge>> path(Vertex s, Vertex t, const std::vector<bool>& allowed) const {
    const int n = g_.num_vertices();
    std::vector<std::optional<DirectedEdge>> via(static_cast<std::size_t>(n));
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    std::deque<Vertex> queue{s};
    seen[s] = true;
    while (!queue.empty()) {
      const Vertex a = queue.front();
      queue.pop_front();
      if (a == t) break;
      for (const auto& d : out_[a]) {
        const Vertex b = end_of(g_, d);
        if (seen[b] || !allowed[b]) continue;
        seen[b] = true;
        via[b] = d;
        queue.push_back(b);
      }
    }
    if (!seen[t]) return std::nullopt;
    std::vector<DirectedEdge> p;
    for (Vertex cur = t; cur != s; cur = start_of(g_, *via[cur])) p.push_back(*via[cur]);
    std::reverse(p.begin(), p.end());
    return p;
  }

 private:
  void add(DirectedEdge d) { out_[start_of(g_, d)].push_back(d); }

  const Multigraph& g_;
  std::vector<std::vector<DirectedEdge>> out_;
};

// Everything the Z3 construction needs, resolved once per cover.
struct Plan {
  struct External {
    std::size_t idx;
    std::vector<DirectedEdge> back_path;  // head -> tail inside the cover
  };
  struct Correction {
    int chain;
    std::vector<DirectedEdge> cycle;
    DirectedEdge in;
    DirectedEdge out;
    bool in_even;
    bool out_even;
  };
  std::vector<External> external;
  std::vector<Correction> corrections;  // last chain first
  std::vector<std::vector<DirectedEdge>> cycles;
  std::vector<std::uint8_t> z2;
};

Plan make_plan(const Multigraph& g, const ChainCover& cover) {
  const int n = g.num_vertices();
  const DirectedCover h(g, cover);
  Plan plan;
  plan.z2.assign(static_cast<std::size_t>(g.num_edges()), 0);
  auto idx = [&](EdgeId id) { return *g.index_of(id); };
  for (EdgeId id : cover.chain_edges()) plan.z2[idx(id)] = 1;
  for (EdgeId id : cover.even_anchor_subset) plan.z2[idx(id)] = 1;

  const std::vector<bool> everywhere(static_cast<std::size_t>(n), true);
  for (EdgeId id : cover.external) {
    const Edge& e = g.edge(id);
    Plan::External ext{idx(id), {}};
    if (!e.is_loop()) {
      auto p = h.path(e.head, e.tail, everywhere);
      if (!p) throw InvariantViolation("no directed path closing external edge " + std::to_string(id));
      ext.back_path = std::move(*p);
    }
    plan.external.push_back(std::move(ext));
  }

  std::vector<int> chain_of(static_cast<std::size_t>(n), -1);
  for (int i = 0; i < cover.k(); ++i) {
    for (Vertex x : cover.chains[i].vertices) chain_of[x] = i;
  }
  const auto& even = cover.even_anchor_subset;
  auto is_even = [&](EdgeId id) { return std::binary_search(even.begin(), even.end(), id); };
  for (int i = cover.k() - 1; i >= 1; --i) {
    const Chain& c = cover.chains[i];
    std::vector<bool> own(static_cast<std::size_t>(n)), earlier(static_cast<std::size_t>(n));
    for (Vertex x = 0; x < n; ++x) {
      own[x] = chain_of[x] == i;
      earlier[x] = chain_of[x] >= 0 && chain_of[x] < i;
    }
    auto through = h.path(c.u, c.v, own);
    auto back = h.path(c.y, c.x, earlier);
    if (!through || !back) {
      throw InvariantViolation("chain " + std::to_string(i + 1) + ": no directed cycle through both anchors");
    }
    Plan::Correction corr{i, {}, h.in_anchor(c), h.out_anchor(c), is_even(c.in_anchor), is_even(c.out_anchor)};
    corr.cycle.push_back(corr.in);
    corr.cycle.insert(corr.cycle.end(), through->begin(), through->end());
    corr.cycle.push_back(corr.out);
    corr.cycle.insert(corr.cycle.end(), back->begin(), back->end());
    plan.corrections.push_back(std::move(corr));
  }
  for (const Chain& c : cover.chains) {
    for (const auto& cyc : c.cycles) plan.cycles.push_back(cyc);
  }
  return plan;
}

class Z3State {
 public:
  Z3State(const Multigraph& g, std::size_t m) : g_(g), z_(m, 0) {}

  void add(const std::vector<DirectedEdge>& walk, int amount) {
    for (const auto& d : walk) add(d, amount);
  }
  void add(DirectedEdge d, int amount) {
    auto& z = z_[*g_.index_of(d.id)];
    z = static_cast<std::uint8_t>((z + (d.forward ? amount : 3 - amount)) % 3);
  }
  void set(std::size_t idx, int value) { z_[idx] = static_cast<std::uint8_t>(value); }
  // Value read in the direction of d.
  int along(DirectedEdge d) const {
    const int z = z_[*g_.index_of(d.id)];
    return d.forward ? z : (3 - z) % 3;
  }
  int at(std::size_t idx) const { return z_[idx]; }

  Flow to_flow(const std::vector<std::uint8_t>& z2) const {
    const Group grp = Group::z2xz3();
    std::vector<EdgeId> ids;
    std::vector<GroupElem> values;
    for (std::size_t i = 0; i < z_.size(); ++i) {
      ids.push_back(g_.edges()[i].id);
      values.push_back(grp.make(z2[i], z_[i]));
    }
    return Flow(grp, std::move(ids), std::move(values));
  }

 private:
  const Multigraph& g_;
  std::vector<std::uint8_t> z_;
};

int fewest_zero_shift(const Z3State& s, const std::vector<DirectedEdge>& cycle) {
  int best = 0;
  std::size_t best_zeros = SIZE_MAX;
  for (int shift = 0; shift < 3; ++shift) {
    const auto zeros = static_cast<std::size_t>(
        std::count_if(cycle.begin(), cycle.end(), [&](DirectedEdge d) { return (s.along(d) + shift) % 3 == 0; }));
    if (zeros < best_zeros) {
      best_zeros = zeros;
      best = shift;
    }
  }
  return best;
}

void require_cubic(const Multigraph& g) {
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    if (g.degree(v) != 3) throw PreconditionError("graph is not cubic (vertex " + std::to_string(v) + ")");
  }
}

}  // namespace

std::vector<EdgeId> ChainCover::anchors() const {
  std::vector<EdgeId> out;
  for (const Chain& c : chains) {
    if (c.in_anchor >= 0) {
      out.push_back(c.in_anchor);
      out.push_back(c.out_anchor);
    }
  }
  return out;
}

std::vector<EdgeId> ChainCover::chain_edges() const {
  std::vector<EdgeId> out;
  for (const Chain& c : chains) out.insert(out.end(), c.edge_ids.begin(), c.edge_ids.end());
  std::sort(out.begin(), out.end());
  return out;
}

ChainCover build_anchored_chain_cover(const Multigraph& g) {
  const int n = g.num_vertices();
  if (n < 2) throw PreconditionError("a chain cover needs at least two vertices");
  if (!is_k_edge_connected(g, 3)) {
    auto cut = edge_connectivity(g);
    throw ConnectivityError("graph is not 3-edge-connected", std::move(cut.certificate));
  }

  ChainCover cover;
  Chain first;
  first.kind = ChainKind::kCycle;
  first.cycles.push_back(shortest_cycle(g));
  first.u = first.v = start_of(g, first.cycles[0][0]);
  fill_from_cycles(g, first);
  cover.chains.push_back(std::move(first));

  std::vector<bool> covered(static_cast<std::size_t>(n), false);
  int remaining = n;
  auto mark = [&](const Chain& c) {
    for (Vertex x : c.vertices) {
      covered[x] = true;
      --remaining;
    }
  };
  mark(cover.chains[0]);
  while (remaining > 0) {
    cover.chains.push_back(grow_chain(g, covered));
    mark(cover.chains.back());
  }

  std::vector<EdgeId> used = cover.chain_edges();
  const auto anchors = cover.anchors();
  used.insert(used.end(), anchors.begin(), anchors.end());
  std::sort(used.begin(), used.end());
  cover.external = complement(g, used);
  cover.even_anchor_subset = compute_even_anchor_subset(g, anchors);
  for (const Chain& c : cover.chains) cover.p += static_cast<int>(c.cycles.size());
  return cover;
}

std::vector<EdgeId> compute_even_anchor_subset(const Multigraph& g, std::span<const EdgeId> anchors) {
  const int n = g.num_vertices();
  std::vector<EdgeId> sorted(anchors.begin(), anchors.end());
  std::sort(sorted.begin(), sorted.end());

  UnionFind uf(n);
  std::vector<std::vector<std::pair<Vertex, EdgeId>>> forest(static_cast<std::size_t>(n));
  std::vector<int> parity(static_cast<std::size_t>(n), 0);
  for (EdgeId id : sorted) {
    const Edge& e = g.edge(id);
    if (e.is_loop()) continue;
    parity[e.tail] ^= 1;
    parity[e.head] ^= 1;
    if (uf.unite(e.tail, e.head)) {
      forest[e.tail].emplace_back(e.head, id);
      forest[e.head].emplace_back(e.tail, id);
    }
  }

  // The forest edges whose far side holds an odd number of odd vertices form
  // the only parity-fixing set inside the forest.
  std::vector<EdgeId> drop;
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  for (Vertex root = 0; root < n; ++root) {
    if (seen[root]) continue;
    std::vector<std::pair<Vertex, EdgeId>> order;  // (vertex, edge to parent)
    std::vector<Vertex> stack{root};
    std::vector<EdgeId> up(static_cast<std::size_t>(n), -1);
    seen[root] = true;
    while (!stack.empty()) {
      const Vertex a = stack.back();
      stack.pop_back();
      order.emplace_back(a, up[a]);
      for (auto [b, id] : forest[a]) {
        if (seen[b]) continue;
        seen[b] = true;
        up[b] = id;
        stack.push_back(b);
      }
    }
    std::vector<int> sub = parity;
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      const auto [a, id] = *it;
      if (id < 0) continue;
      if (sub[a]) drop.push_back(id);
      sub[g.edge(id).other(a)] ^= sub[a];
    }
  }
  std::sort(drop.begin(), drop.end());
  std::vector<EdgeId> out;
  std::set_difference(sorted.begin(), sorted.end(), drop.begin(), drop.end(), std::back_inserter(out));
  return out;
}

std::optional<std::string> cover_violation(const Multigraph& g, const ChainCover& cover) {
  const int n = g.num_vertices();
  if (cover.chains.empty()) return "no chains";
  std::vector<int> chain_of(static_cast<std::size_t>(n), -1);
  for (int i = 0; i < cover.k(); ++i) {
    for (Vertex x : cover.chains[i].vertices) {
      if (x < 0 || x >= n) return "vertex out of range";
      if (chain_of[x] >= 0) return "chains share vertex " + std::to_string(x);
      chain_of[x] = i;
    }
  }
  for (Vertex x = 0; x < n; ++x) {
    if (chain_of[x] < 0) return "vertex " + std::to_string(x) + " is not covered";
  }

  int p = 0;
  for (int i = 0; i < cover.k(); ++i) {
    const Chain& c = cover.chains[i];
    const std::string tag = "chain " + std::to_string(i + 1) + ": ";
    if ((i == 0) != (c.kind == ChainKind::kCycle)) return tag + "only the first chain is a cycle";
    std::vector<EdgeId> from_cycles;
    for (const auto& cyc : c.cycles) {
      if (cyc.empty()) return tag + "empty cycle";
      std::vector<Vertex> seen;
      for (std::size_t j = 0; j < cyc.size(); ++j) {
        if (!g.has_edge(cyc[j].id) || g.edge(cyc[j].id).is_loop()) return tag + "bad cycle edge";
        if (end_of(g, cyc[j]) != start_of(g, cyc[(j + 1) % cyc.size()])) return tag + "cycle is not closed";
        seen.push_back(start_of(g, cyc[j]));
        from_cycles.push_back(cyc[j].id);
      }
      std::sort(seen.begin(), seen.end());
      if (std::adjacent_find(seen.begin(), seen.end()) != seen.end()) return tag + "cycle repeats a vertex";
    }
    std::sort(from_cycles.begin(), from_cycles.end());
    if (from_cycles != c.edge_ids) return tag + "edges do not match its cycles";
    if (std::adjacent_find(from_cycles.begin(), from_cycles.end()) != from_cycles.end()) {
      return tag + "cycles share an edge";
    }
    for (EdgeId id : c.edge_ids) {
      const Edge& e = g.edge(id);
      if (chain_of[e.tail] != i || chain_of[e.head] != i) return tag + "edge leaves the chain";
    }
    switch (c.kind) {
      case ChainKind::kCycle:
        if (c.cycles.size() != 1) return tag + "first chain must be one cycle";
        break;
      case ChainKind::kSingleVertex:
        if (c.u != c.v || c.vertices.size() != 1 || !c.cycles.empty()) return tag + "malformed single vertex";
        break;
      case ChainKind::kProperChain:
        if (c.u == c.v || c.cycles.empty()) return tag + "malformed chain";
        if (two_path_flow(g, c.edge_ids, c.u, c.v) != 2) return tag + "ends not joined by two edge-disjoint paths";
        for (const auto& cyc : c.cycles) {
          for (Vertex x : c.vertices) {
            if (std::count_if(cyc.begin(), cyc.end(), [&](DirectedEdge d) { return start_of(g, d) == x; }) > 1) {
              return tag + "block is not a cycle";
            }
          }
        }
        if (c.edge_ids.size() != c.vertices.size() + c.cycles.size() - 1) return tag + "is not a chain of cycles";
        break;
    }
    p += static_cast<int>(c.cycles.size());
    if (i == 0) {
      if (c.in_anchor >= 0 || c.out_anchor >= 0) return tag + "the cycle has no anchors";
      continue;
    }
    if (c.in_anchor < 0 || c.out_anchor < 0 || c.in_anchor == c.out_anchor) return tag + "needs two distinct anchors";
    const Edge& a = g.edge(c.in_anchor);
    const Edge& b = g.edge(c.out_anchor);
    if (!((a.tail == c.u && a.head == c.x) || (a.head == c.u && a.tail == c.x))) return tag + "first anchor misplaced";
    if (!((b.tail == c.v && b.head == c.y) || (b.head == c.v && b.tail == c.y))) return tag + "second anchor misplaced";
    if (c.x < 0 || c.y < 0 || chain_of[c.x] >= i || chain_of[c.y] >= i) return tag + "anchor must reach an earlier chain";
  }
  if (p != cover.p) return "cycle count mismatch";

  std::vector<EdgeId> used = cover.chain_edges();
  const auto anchors = cover.anchors();
  used.insert(used.end(), anchors.begin(), anchors.end());
  std::sort(used.begin(), used.end());
  if (std::adjacent_find(used.begin(), used.end()) != used.end()) return "an anchor is also a chain edge";
  if (complement(g, used) != cover.external) return "external edges mismatch";

  std::vector<EdgeId> sorted_anchors = anchors;
  std::sort(sorted_anchors.begin(), sorted_anchors.end());
  std::vector<int> deg(static_cast<std::size_t>(n), 0);
  for (EdgeId id : cover.even_anchor_subset) {
    if (!std::binary_search(sorted_anchors.begin(), sorted_anchors.end(), id)) return "even subset outside anchors";
    ++deg[g.edge(id).tail];
    ++deg[g.edge(id).head];
  }
  for (Vertex x = 0; x < n; ++x) {
    if (deg[x] % 2) return "even anchor subset is odd at vertex " + std::to_string(x);
  }
  UnionFind uf(n);
  for (EdgeId id : sorted_anchors) {
    if (std::binary_search(cover.even_anchor_subset.begin(), cover.even_anchor_subset.end(), id)) continue;
    if (!uf.unite(g.edge(id).tail, g.edge(id).head)) return "even anchor subset is not maximal";
  }
  if (g.num_edges() != static_cast<int>(cover.external.size()) + n + cover.p + cover.k() - 2) {
    return "edge count identity fails";
  }
  return std::nullopt;
}

BigInt cover_count_bound(const ChainCover& cover) {
  return ceil_pow2_pow3_half(static_cast<long long>(cover.external.size()),
                             2LL * cover.p + static_cast<long long>(cover.even_anchor_subset.size()));
}

BigInt certified_cover_count(const Multigraph& g, const ChainCover& cover) {
  (void)g;
  BigInt count = BigInt(1) << cover.external.size();
  for (int i = 0; i < cover.p; ++i) count *= 3;
  const auto& even = cover.even_anchor_subset;
  for (const Chain& c : cover.chains) {
    if (c.in_anchor < 0) continue;
    const int in_even = std::binary_search(even.begin(), even.end(), c.in_anchor) ? 1 : 0;
    const int out_even = std::binary_search(even.begin(), even.end(), c.out_anchor) ? 1 : 0;
    count *= 1 + in_even + out_even;
  }
  return count;
}

CoverGeneration generate_from_cover(const Multigraph& g, const ChainCover& cover, long long limit,
                                    const FlowSink& sink) {
  const Plan plan = make_plan(g, cover);
  CoverGeneration result;
  result.certified = certified_cover_count(g, cover);
  if (limit <= 0) return result;

  Z3State state(g, static_cast<std::size_t>(g.num_edges()));
  const std::size_t nx = plan.external.size();
  const std::size_t nc = plan.corrections.size();
  const std::size_t levels = nx + nc + plan.cycles.size();
  bool stop = false;

  std::function<void(std::size_t)> descend = [&](std::size_t level) {
    if (stop) return;
    if (level == levels) {
      ++result.emitted;
      if (!sink(state.to_flow(plan.z2)) || result.emitted >= limit) stop = true;
      return;
    }
    if (level < nx) {
      const auto& ext = plan.external[level];
      for (int c = 1; c <= 2 && !stop; ++c) {
        state.set(ext.idx, c);
        state.add(ext.back_path, c);
        descend(level + 1);
        state.add(ext.back_path, 3 - c);
        state.set(ext.idx, 0);
      }
      return;
    }
    if (level < nx + nc) {
      const auto& corr = plan.corrections[level - nx];
      const int vin = state.along(corr.in);
      const int vout = state.along(corr.out);
      for (int q = 0; q < 3 && !stop; ++q) {
        if ((!corr.in_even && q == vin) || (!corr.out_even && q == vout)) continue;
        state.add(corr.cycle, (3 - q) % 3);
        descend(level + 1);
        state.add(corr.cycle, q);
      }
      return;
    }
    const auto& cyc = plan.cycles[level - nx - nc];
    for (int s = 0; s < 3 && !stop; ++s) {
      state.add(cyc, s);
      descend(level + 1);
      state.add(cyc, (3 - s) % 3);
    }
  };
  descend(0);
  return result;
}

Flow special_sparse_zero_flow(const Multigraph& g, const ChainCover& cover) {
  const Plan plan = make_plan(g, cover);
  Z3State state(g, static_cast<std::size_t>(g.num_edges()));
  for (const auto& ext : plan.external) {
    state.set(ext.idx, 1);
    state.add(ext.back_path, 1);
  }
  for (const auto& corr : plan.corrections) {
    const int vin = state.along(corr.in);
    const int vout = state.along(corr.out);
    int q = 0;
    while (q == vin || q == vout) ++q;
    state.add(corr.cycle, (3 - q) % 3);
  }
  for (const auto& cyc : plan.cycles) state.add(cyc, fewest_zero_shift(state, cyc));
  return state.to_flow(plan.z2);
}

CubicAnalysis analyse_cubic(const Multigraph& g, const ChainCover& cover) {
  require_cubic(g);
  const int n = g.num_vertices();
  CubicAnalysis a{{}, {}, {}, 0, {}, {}, special_sparse_zero_flow(g, cover)};

  std::vector<bool> in_k(static_cast<std::size_t>(n), false);
  for (const Chain& c : cover.chains) {
    if (c.cycles.empty()) continue;
    for (Vertex x : c.vertices) in_k[x] = true;
  }
  for (Vertex x = 0; x < n; ++x) (in_k[x] ? a.K : a.J).push_back(x);

  const std::vector<EdgeId> on_chains = cover.chain_edges();
  for (const Edge& e : g.edges()) {
    if (!std::binary_search(on_chains.begin(), on_chains.end(), e.id)) a.H.push_back(e.id);
  }
  UnionFind uf(n);
  a.q = n;
  for (EdgeId id : a.H) {
    if (!uf.unite(g.edge(id).tail, g.edge(id).head)) throw InvariantViolation("H contains a cycle");
    --a.q;
  }

  for (EdgeId id : cover.chain_edges()) {
    if (a.special.at(id).residues[1] != 0) a.W.push_back(id);
  }
  for (EdgeId id : a.W) {
    if (uf.unite(g.edge(id).tail, g.edge(id).head)) a.W_prime.push_back(id);
  }
  return a;
}

long long toggled_flows(const Multigraph& g, const CubicAnalysis& a, long long limit, const FlowSink& sink) {
  const int n = g.num_vertices();
  std::vector<EdgeId> forest = a.H;
  forest.insert(forest.end(), a.W_prime.begin(), a.W_prime.end());
  std::sort(forest.begin(), forest.end());
  std::vector<EdgeId> rest;
  std::set_difference(a.W.begin(), a.W.end(), a.W_prime.begin(), a.W_prime.end(), std::back_inserter(rest));

  Multigraph tree(n);
  std::vector<EdgeId> tree_to_g;
  for (EdgeId id : forest) {
    tree.add_edge(g.edge(id).tail, g.edge(id).head);
    tree_to_g.push_back(id);
  }
  std::vector<std::vector<EdgeId>> cycles;
  for (EdgeId id : rest) {
    const Edge& e = g.edge(id);
    auto path = bfs_path(tree, e.head, e.tail, -1);
    if (!path) throw InvariantViolation("toggled edge has no fundamental cycle");
    std::vector<EdgeId> cyc{id};
    for (const auto& d : *path) cyc.push_back(tree_to_g[static_cast<std::size_t>(d.id)]);
    cycles.push_back(std::move(cyc));
  }

  const Group grp = Group::z2xz3();
  long long emitted = 0;
  const std::size_t r = cycles.size();
  for (unsigned long long mask = 0; emitted < limit; ++mask) {
    if (r < 64 && (mask >> r) != 0) break;
    Flow f = a.special;
    for (std::size_t j = 0; j < r && j < 64; ++j) {
      if (!((mask >> j) & 1ULL)) continue;
      for (EdgeId id : cycles[j]) f.set(id, grp.add(f.at(id), grp.make(1, 0)));
    }
    ++emitted;
    if (!sink(f)) break;
  }
  return emitted;
}

CubicFamilyStats cubic_flow_family(const Multigraph& g, long long limit, const FlowSink& sink) {
  require_cubic(g);
  const ChainCover cover = build_anchored_chain_cover(g);
  const CubicAnalysis analysis = analyse_cubic(g, cover);
  CubicFamilyStats stats;
  stats.cover_certified = certified_cover_count(g, cover);
  stats.toggle_certified = BigInt(1) << (analysis.W.size() - analysis.W_prime.size());
  if (limit <= 0) return stats;

  std::unordered_set<std::string> seen;
  bool stop = false;
  const FlowSink dedup = [&](const Flow& f) {
    if (!seen.insert(f.serialize()).second) return true;
    ++stats.emitted;
    if (!sink(f) || stats.emitted >= limit) stop = true;
    return !stop;
  };
  auto run_cover = [&] {
    if (!stop) generate_from_cover(g, cover, LLONG_MAX, dedup);
  };
  auto run_toggle = [&] {
    if (!stop) toggled_flows(g, analysis, LLONG_MAX, dedup);
  };
  if (stats.cover_certified >= stats.toggle_certified) {
    run_cover();
    run_toggle();
  } else {
    run_toggle();
    run_cover();
  }
  return stats;
}

}  // namespace nzflow
