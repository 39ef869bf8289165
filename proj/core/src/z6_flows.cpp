#include "nzflow/z6_flows.hpp"

#include <algorithm>
#include <climits>
#include <unordered_set>

#include "nzflow/chain_cover.hpp"
#include "nzflow/connectivity.hpp"
#include "nzflow/errors.hpp"

namespace nzflow {
namespace {

std::optional<Vertex> first_vertex_above(const Multigraph& g, int degree) {
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    if (g.degree(v) > degree) return v;
  }
  return std::nullopt;
}

std::optional<Vertex> first_vertex_of_degree(const Multigraph& g, int degree) {
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    if (g.degree(v) == degree) return v;
  }
  return std::nullopt;
}

bool is_cubic(const Multigraph& g) {
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    if (g.degree(v) != 3) return false;
  }
  return true;
}

// Steps through every assignment of nonzero values to the given loops.
class LoopOdometer {
 public:
  LoopOdometer(const Group& grp, const std::vector<EdgeId>& loops) : grp_(grp), loops_(loops), codes_(loops.size(), 1) {}

  LoopValues values() const {
    LoopValues out;
    for (std::size_t i = 0; i < loops_.size(); ++i) out[loops_[i]] = grp_.decode(codes_[i]);
    return out;
  }

  bool next() {
    for (std::size_t i = loops_.size(); i-- > 0;) {
      if (++codes_[i] < grp_.order()) return true;
      codes_[i] = 1;
    }
    return false;
  }

 private:
  Group grp_;
  std::vector<EdgeId> loops_;
  std::vector<int> codes_;
};

BigInt power(int base, std::size_t exp) {
  BigInt out = 1;
  for (std::size_t i = 0; i < exp; ++i) out *= base;
  return out;
}

}  // namespace

std::pair<Multigraph, ReductionTrace> contract_two_cuts(const Multigraph& g) {
  ReductionTrace trace(g);
  while (trace.final_graph().num_vertices() > 1) {
    const Multigraph& cur = trace.final_graph();
    const GlobalCut cut = edge_connectivity(cur);
    if (cut.value >= 3) break;
    if (cut.value < 2) throw PreconditionError("graph is not 2-edge-connected");
    const auto& crossing = cut.certificate.crossing_edges;
    trace.append(contract_edge(cur, *std::min_element(crossing.begin(), crossing.end())));
  }
  Multigraph out = trace.final_graph();
  return {std::move(out), std::move(trace)};
}

std::optional<CubicReduction> reduce_to_cubic(const Multigraph& g) {
  CubicReduction r{{}, ReductionTrace(g), {}, 0};
  for (const Edge& e : g.edges()) {
    if (!e.is_loop()) continue;
    r.trace.append(delete_edge(r.trace.final_graph(), e.id));
    r.deleted_loops.push_back(e.id);
  }
  if (r.trace.final_graph().num_vertices() < 2) return std::nullopt;

  while (auto v = first_vertex_above(r.trace.final_graph(), 4)) {
    const Multigraph& cur = r.trace.final_graph();
    const auto [e1, e2] = find_splittable_pair_preserving_k(cur, *v, 3);
    Surgery s = lift_pair(cur, *v, e1, e2);
    const EdgeId fresh = std::get<LiftPair>(s.step.op).new_edge;
    const bool loop = s.graph.edge(fresh).is_loop();
    r.trace.append(std::move(s));
    if (loop) {
      r.trace.append(delete_edge(r.trace.final_graph(), fresh));
      r.deleted_loops.push_back(fresh);
    }
  }

  const Multigraph& split = r.trace.final_graph();
  for (Vertex v = 0; v < split.num_vertices(); ++v) r.n4 += split.degree(v) == 4 ? 1 : 0;
  if (split.num_vertices() - r.n4 < 2) return std::nullopt;

  while (auto v = first_vertex_of_degree(r.trace.final_graph(), 4)) {
    const Multigraph& cur = r.trace.final_graph();
    const auto [e1, e2] = find_splittable_pair(cur, *v);
    r.trace.append(lift_pair(cur, *v, e1, e2));
    r.trace.append(suppress_vertex(r.trace.final_graph(), *v));
  }
  r.cubic = r.trace.final_graph();
  std::sort(r.deleted_loops.begin(), r.deleted_loops.end());
  if (!is_cubic(r.cubic) || !is_k_edge_connected(r.cubic, 3)) return std::nullopt;
  return r;
}

Z6FamilyStats z6_flow_family(const Multigraph& g, long long limit, const FlowSink& sink) {
  if (g.num_vertices() == 0) throw PreconditionError("graph has no vertices");
  if (g.num_vertices() >= 2) {
    GlobalCut cut = edge_connectivity(g);
    if (cut.value < 2) throw ConnectivityError("graph is not 2-edge-connected", std::move(cut.certificate));
  }

  const Group grp = Group::z2xz3();
  auto [g0, trace0] = contract_two_cuts(g);
  Z6FamilyStats stats;
  stats.contracted = static_cast<int>(trace0.steps().size());
  stats.reduced_vertices = g0.num_vertices();
  stats.reduced_edges = g0.num_edges();
  if (limit <= 0) return stats;

  std::unordered_set<std::string> seen;
  bool stop = false;
  auto emit = [&](const Flow& f) {
    if (stop || !seen.insert(f.serialize()).second) return;
    ++stats.emitted;
    if (!sink(f) || stats.emitted >= limit) stop = true;
  };

  if (g0.num_vertices() == 1) {
    stats.first_branch = "loops";
    stats.dense_certified = power(grp.order() - 1, static_cast<std::size_t>(g0.num_edges()));
    enumerate_nz_flows(g0, grp, LLONG_MAX, [&](const Flow& f) {
      emit(pull_back_flow(f, trace0));
      return !stop;
    });
    return stats;
  }

  const ChainCover cover = build_anchored_chain_cover(g0);
  stats.dense_certified = certified_cover_count(g0, cover);

  const auto cubic = reduce_to_cubic(g0);
  if (cubic) {
    stats.n4 = cubic->n4;
    const ChainCover cc = build_anchored_chain_cover(cubic->cubic);
    const CubicAnalysis ca = analyse_cubic(cubic->cubic, cc);
    const BigInt toggles = BigInt(1) << (ca.W.size() - ca.W_prime.size());
    stats.cubic_certified =
        std::max(certified_cover_count(cubic->cubic, cc), toggles) * power(grp.order() - 1, cubic->deleted_loops.size());
  }

  auto run_dense = [&] {
    if (stop) return;
    generate_from_cover(g0, cover, LLONG_MAX, [&](const Flow& f) {
      emit(pull_back_flow(f, trace0));
      return !stop;
    });
  };
  auto run_cubic = [&] {
    if (stop || !cubic) return;
    cubic_flow_family(cubic->cubic, LLONG_MAX, [&](const Flow& f) {
      LoopOdometer loops(grp, cubic->deleted_loops);
      do {
        const LoopValues values = loops.values();
        emit(pull_back_flow(pull_back_flow(f, cubic->trace, &values), trace0));
      } while (!stop && loops.next());
      return !stop;
    });
  };

  if (stats.cubic_certified && *stats.cubic_certified > stats.dense_certified) {
    stats.first_branch = "cubic";
    run_cubic();
    run_dense();
  } else {
    stats.first_branch = "dense";
    run_dense();
    run_cubic();
  }
  return stats;
}

}  // namespace nzflow
