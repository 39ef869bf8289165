#pragma once

#include <optional>
#include <string>

#include "nzflow/bounds.hpp"
#include "nzflow/census.hpp"
#include "nzflow/multigraph.hpp"
#include "nzflow/surgery.hpp"

namespace nzflow {

/// Contracts the lowest-id edge of a 2-edge-cut until the graph is
/// 3-edge-connected or has one vertex. Loops created on the way stay.
std::pair<Multigraph, ReductionTrace> contract_two_cuts(const Multigraph& g);

/// The cubic reduction of a 3-edge-connected graph: loops are deleted (their
/// ids returned), vertices are split down to degree at most 4, and every
/// degree-4 vertex is lifted once and suppressed.
struct CubicReduction {
  Multigraph cubic;
  ReductionTrace trace;
  std::vector<EdgeId> deleted_loops;
  int n4 = 0;  // degree-4 vertices after splitting
};
/// nullopt when fewer than two vertices would remain or the result is not a
/// 3-edge-connected cubic graph.
std::optional<CubicReduction> reduce_to_cubic(const Multigraph& g);

struct Z6FamilyStats {
  int contracted = 0;         // edges contracted in 2-cuts
  int reduced_vertices = 0;   // after contraction
  int reduced_edges = 0;
  int n4 = -1;                // -1 when the cubic branch was not built
  BigInt dense_certified;
  std::optional<BigInt> cubic_certified;
  std::string first_branch;   // "dense", "cubic" or "loops"
  long long emitted = 0;
};

/// Distinct nowhere-zero Z2xZ3 flows of a 2-edge-connected graph, stated on
/// g itself. Throws ConnectivityError (with a bridge cut) otherwise.
Z6FamilyStats z6_flow_family(const Multigraph& g, long long limit, const FlowSink& sink);

}  // namespace nzflow
