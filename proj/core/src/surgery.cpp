#include "nzflow/surgery.hpp"

#include <algorithm>
#include <string>

#include "nzflow/connectivity.hpp"
#include "nzflow/errors.hpp"

namespace nzflow {
namespace {

// Identity map with `gone` removed and later vertices shifted down.
std::vector<Vertex> delete_vertex_map(int n, Vertex gone) {
  std::vector<Vertex> map(static_cast<std::size_t>(n));
  for (Vertex x = 0; x < n; ++x) map[x] = x < gone ? x : (x == gone ? -1 : x - 1);
  return map;
}

std::vector<Vertex> identity_map(int n) {
  std::vector<Vertex> map(static_cast<std::size_t>(n));
  for (Vertex x = 0; x < n; ++x) map[x] = x;
  return map;
}

const Edge& incident_non_loop(const Multigraph& g, Vertex v, EdgeId id) {
  const Edge& e = g.edge(id);
  if (e.is_loop()) throw PreconditionError("cannot lift loop " + std::to_string(id));
  if (e.tail != v && e.head != v) {
    throw PreconditionError("edge " + std::to_string(id) + " is not incident with vertex " + std::to_string(v));
  }
  return e;
}

Surgery lift_impl(const Multigraph& g, Vertex v, EdgeId e1, EdgeId e2, bool suppress) {
  if (e1 == e2) throw PreconditionError("lift needs two distinct edges");
  const Edge& a = incident_non_loop(g, v, e1);
  const Edge& b = incident_non_loop(g, v, e2);
  const Vertex far1 = a.other(v);
  const Vertex far2 = b.other(v);
  const bool isolated = g.degree(v) == 2;
  if (suppress && !isolated) throw PreconditionError("suppression needs a vertex of degree 2");

  const int n = g.num_vertices();
  std::vector<Vertex> map = isolated ? delete_vertex_map(n, v) : identity_map(n);
  GraphBuilder b2(isolated ? n - 1 : n, g.next_edge_id());
  for (const Edge& e : g.edges()) {
    if (e.id == e1 || e.id == e2) continue;
    b2.keep_edge(e.id, map[e.tail], map[e.head]);
  }
  const EdgeId fresh = b2.new_edge(map[far1], map[far2]);
  Surgery s{std::move(b2).build(), {}};
  if (suppress) {
    s.step.op = SuppressDeg2{v, e1, e2, fresh};
  } else {
    s.step.op = LiftPair{v, e1, e2, fresh};
  }
  s.step.before = g;
  s.step.vertex_map = std::move(map);
  return s;
}

// Value carried by a lifted edge `id` at v when the new edge carries x from
// far(e1) to far(e2): e1 must carry x towards v, e2 carries x away from v.
GroupElem lifted_value(const Group& grp, const Edge& e, Vertex v, GroupElem x, bool into_v) {
  const bool stored_into_v = e.head == v;
  return stored_into_v == into_v ? x : grp.neg(x);
}

Flow pull_back_lift(const Flow& f, const Multigraph& before, Vertex v, EdgeId e1, EdgeId e2, EdgeId fresh) {
  const Group& grp = f.group();
  const GroupElem x = f.at(fresh);
  Flow out(grp, before);
  for (const Edge& e : before.edges()) {
    if (e.id == e1) {
      out.set(e.id, lifted_value(grp, e, v, x, true));
    } else if (e.id == e2) {
      out.set(e.id, lifted_value(grp, e, v, x, false));
    } else {
      out.set(e.id, f.at(e.id));
    }
  }
  return out;
}

}  // namespace

ReductionTrace::ReductionTrace(Multigraph original) : original_(original), final_(std::move(original)) {}

void ReductionTrace::append(Surgery s) {
  if (!(s.step.before == final_)) throw InvariantViolation("surgery does not start from the trace's final graph");
  final_ = std::move(s.graph);
  steps_.push_back(std::move(s.step));
}

Vertex ReductionTrace::map_vertex(Vertex v) const {
  for (const SurgeryStep& st : steps_) {
    if (v < 0) return -1;
    v = st.vertex_map.at(v);
  }
  return v;
}

Multigraph ReductionTrace::replay() const {
  Multigraph cur = original_;
  for (const SurgeryStep& st : steps_) {
    Surgery s = std::visit(
        [&](const auto& op) -> Surgery {
          using T = std::decay_t<decltype(op)>;
          if constexpr (std::is_same_v<T, LiftPair>) {
            return lift_pair(cur, op.v, op.e1, op.e2);
          } else if constexpr (std::is_same_v<T, SuppressDeg2>) {
            return suppress_vertex(cur, op.v);
          } else if constexpr (std::is_same_v<T, ContractEdge>) {
            return contract_edge(cur, op.e);
          } else if constexpr (std::is_same_v<T, DeleteEdge>) {
            return delete_edge(cur, op.e);
          } else {
            return clique_expansion(cur, op.center);
          }
        },
        st.op);
    cur = std::move(s.graph);
  }
  return cur;
}

Surgery lift_pair(const Multigraph& g, Vertex v, EdgeId e1, EdgeId e2) { return lift_impl(g, v, e1, e2, false); }

Surgery suppress_vertex(const Multigraph& g, Vertex v) {
  const auto& inc = g.incident(v);
  if (inc.size() != 2 || g.degree(v) != 2) throw PreconditionError("suppression needs a loopless vertex of degree 2");
  return lift_impl(g, v, inc[0], inc[1], true);
}

Surgery delete_edge(const Multigraph& g, EdgeId e) {
  g.edge(e);
  const EdgeId ids[] = {e};
  Surgery s{g.without_edges(ids), {}};
  s.step.op = DeleteEdge{e};
  s.step.before = g;
  s.step.vertex_map = identity_map(g.num_vertices());
  return s;
}

Surgery contract_edge(const Multigraph& g, EdgeId id) {
  const Edge& e = g.edge(id);
  if (e.is_loop()) return delete_edge(g, id);
  const Vertex keep = std::min(e.tail, e.head);
  const Vertex gone = std::max(e.tail, e.head);
  std::vector<Vertex> map = delete_vertex_map(g.num_vertices(), gone);
  map[gone] = keep;
  GraphBuilder b(g.num_vertices() - 1, g.next_edge_id());
  for (const Edge& x : g.edges()) {
    if (x.id != id) b.keep_edge(x.id, map[x.tail], map[x.head]);
  }
  Surgery s{std::move(b).build(), {}};
  s.step.op = ContractEdge{id, keep, gone};
  s.step.before = g;
  s.step.vertex_map = std::move(map);
  return s;
}

Surgery clique_expansion(const Multigraph& g, Vertex u) {
  const int n = g.num_vertices();
  if (n < 2) throw PreconditionError("clique expansion needs at least two vertices");
  if (u < 0 || u >= n) throw PreconditionError("clique expansion centre out of range");
  std::vector<Vertex> map = delete_vertex_map(n, u);

  CliqueExpand op;
  op.center = u;
  std::vector<const Edge*> spokes;
  for (EdgeId id : g.incident(u)) {
    const Edge& e = g.edge(id);
    if (e.is_loop()) {
      op.deleted_loops.push_back(id);
    } else {
      spokes.push_back(&e);
    }
  }
  const int base = n - 1;
  GraphBuilder b(base + static_cast<int>(spokes.size()), g.next_edge_id());
  for (const Edge& e : g.edges()) {
    if (e.tail != u && e.head != u) b.keep_edge(e.id, map[e.tail], map[e.head]);
  }
  for (std::size_t i = 0; i < spokes.size(); ++i) {
    const Edge& e = *spokes[i];
    const Vertex x = base + static_cast<Vertex>(i);
    const EdgeId pendant = e.tail == u ? b.new_edge(x, map[e.head]) : b.new_edge(map[e.tail], x);
    op.new_vertices.push_back(x);
    op.subdivisions.push_back({e.id, x, pendant});
  }
  for (std::size_t i = 0; i < spokes.size(); ++i) {
    for (std::size_t j = i + 1; j < spokes.size(); ++j) {
      op.clique_edges.push_back(b.new_edge(base + static_cast<Vertex>(i), base + static_cast<Vertex>(j)));
    }
  }
  Surgery s{std::move(b).build(), {}};
  s.step.op = std::move(op);
  s.step.before = g;
  s.step.vertex_map = std::move(map);
  return s;
}

std::pair<Multigraph, ReductionTrace> suppress_or_split_to_max_degree(const Multigraph& g, int k, int dmax) {
  if (dmax < k) throw PreconditionError("dmax must be at least k");
  if (!is_k_edge_connected(g, k)) {
    throw PreconditionError("graph is not " + std::to_string(k) + "-edge-connected");
  }
  ReductionTrace trace(g);
  for (;;) {
    const Multigraph& cur = trace.final_graph();
    Vertex target = -1;
    for (Vertex v = 0; v < cur.num_vertices(); ++v) {
      if (cur.degree(v) > dmax) {
        target = v;
        break;
      }
    }
    if (target < 0) break;
    auto [e1, e2] = find_splittable_pair_preserving_k(cur, target, k);
    trace.append(lift_pair(cur, target, e1, e2));
  }
  Multigraph out = trace.final_graph();
  return {std::move(out), std::move(trace)};
}

Flow pull_back_step(const Flow& f, const SurgeryStep& step, const LoopValues* loop_values) {
  return std::visit(
      [&](const auto& op) -> Flow {
        using T = std::decay_t<decltype(op)>;
        if constexpr (std::is_same_v<T, LiftPair> || std::is_same_v<T, SuppressDeg2>) {
          return pull_back_lift(f, step.before, op.v, op.e1, op.e2, op.new_edge);
        } else if constexpr (std::is_same_v<T, ContractEdge>) {
          const Group& grp = f.group();
          const Multigraph& before = step.before;
          Flow out(grp, before);
          GroupElem net = grp.zero();
          for (const Edge& e : before.edges()) {
            if (e.id == op.e) continue;
            const GroupElem val = f.at(e.id);
            out.set(e.id, val);
            if (e.is_loop()) continue;
            if (e.head == op.removed_vertex) net = grp.add(net, val);
            if (e.tail == op.removed_vertex) net = grp.sub(net, val);
          }
          const Edge& ce = before.edge(op.e);
          out.set(op.e, ce.head == op.removed_vertex ? grp.neg(net) : net);
          return out;
        } else if constexpr (std::is_same_v<T, DeleteEdge>) {
          const Edge& de = step.before.edge(op.e);
          const auto it = loop_values ? loop_values->find(op.e) : LoopValues::const_iterator{};
          if (!de.is_loop() || !loop_values || it == loop_values->end()) {
            throw PreconditionError("flows cannot be pulled back through an edge deletion");
          }
          Flow out(f.group(), step.before);
          for (const Edge& e : step.before.edges()) out.set(e.id, e.id == op.e ? it->second : f.at(e.id));
          return out;
        } else {
          throw PreconditionError("flows cannot be pulled back through a clique expansion");
        }
      },
      step.op);
}

Flow pull_back_flow(const Flow& f, const ReductionTrace& trace, const LoopValues* loop_values) {
  const auto ids = trace.final_graph().edge_ids();
  if (!std::equal(ids.begin(), ids.end(), f.edge_ids().begin(), f.edge_ids().end())) {
    throw PreconditionError("flow is not defined on the trace's final graph");
  }
  Flow cur = f;
  const auto& steps = trace.steps();
  for (auto it = steps.rbegin(); it != steps.rend(); ++it) cur = pull_back_step(cur, *it, loop_values);
  return cur;
}

Contraction contract_vertex_set(const Multigraph& g, const std::vector<bool>& side) {
  const int n = g.num_vertices();
  Contraction c;
  c.vertex_map.assign(static_cast<std::size_t>(n), -1);
  int next = 0;
  for (Vertex x = 0; x < n; ++x) {
    if (!side[x]) c.vertex_map[x] = next++;
  }
  c.merged = next;
  for (Vertex x = 0; x < n; ++x) {
    if (side[x]) c.vertex_map[x] = c.merged;
  }
  GraphBuilder b(next + 1, g.next_edge_id());
  for (const Edge& e : g.edges()) {
    if (side[e.tail] && side[e.head]) {
      c.dropped_loops.push_back(e.id);
      continue;
    }
    b.keep_edge(e.id, c.vertex_map[e.tail], c.vertex_map[e.head]);
  }
  c.graph = std::move(b).build();
  return c;
}

}  // namespace nzflow
