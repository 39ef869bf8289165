#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nzflow/flow.hpp"
#include "nzflow/multigraph.hpp"

namespace nzflow {

/// Z3 values on vertices summing to 0.
struct Boundary {
  std::vector<int> values;  // residues in 0..2

  static Boundary zero(int n) { return {std::vector<int>(static_cast<std::size_t>(n), 0)}; }
  int at(Vertex v) const { return values.at(v); }
  void add(Vertex v, int delta);
  /// beta(X) for a marked vertex set.
  int of(const std::vector<bool>& side) const;
  bool is_boundary() const;
};

/// 4, 7, 6 or 5 from beta(X) and the parity of deg(X).
int sigma(const Multigraph& g, const Boundary& beta, const std::vector<bool>& side);

/// One direction per edge, indexed like g.edges(); true means tail -> head.
using Orientation = std::vector<bool>;

/// Forward edges carry 1 and reversed edges 2.
Flow orientation_to_flow(const Multigraph& g, const Orientation& o);
/// Requires a nowhere-zero Z3 flow.
Orientation flow_to_orientation(const Multigraph& g, const Flow& f);

/// out-degree minus in-degree is beta(v) mod 3 at every vertex.
bool verify_beta_flow(const Multigraph& g, const Orientation& o, const Boundary& beta);

/// Edges with a prescribed direction; every other edge is free.
struct OrientationState {
  std::map<EdgeId, bool> fixed;

  std::vector<EdgeId> free_edges(const Multigraph& g) const;
};

struct SearchLimits {
  int max_free_edges = 40;
  long long node_budget = 20'000'000;
};

/// Backtracking over the free edges in ascending id order, tail -> head first,
/// pruning on residual degrees. Returns the first completion, or nullopt if
/// none exists. Throws CapExceeded("instance too large") past the limits.
std::optional<Orientation> extend_orientation_search(const Multigraph& g, const Boundary& beta,
                                                     const OrientationState& state, const SearchLimits& limits = {});

using OrientationSink = std::function<bool(const Orientation&)>;

/// Every completion in the same order; returns how many were visited.
long long for_each_extension(const Multigraph& g, const Boundary& beta, const OrientationState& state, long long limit,
                             const OrientationSink& sink, const SearchLimits& limits = {});

struct HypothesisReport {
  bool condition1 = true;  // deg(X) >= sigma(X) for v in X, 2 <= |X| < n
  bool condition2 = true;  // deg(v) <= sigma({v})
  std::optional<std::vector<Vertex>> violating_set;

  bool holds() const { return condition1 && condition2; }
};

/// Exhaustive over all X containing v. Throws PreconditionError
/// ("use corollary form") above 16 vertices.
HypothesisReport check_extend_hypotheses(const Multigraph& g, const Boundary& beta, Vertex v);

/// 6-edge-connected, deg(v) <= 7 and beta(v) = 0.
bool check_corollary_hypotheses(const Multigraph& g, const Boundary& beta, Vertex v);

/// For deg(v) = 6, one preoriented edge at v is reversed and beta shifted by
/// 2 at its ends so that the extension hypotheses apply; otherwise unchanged.
struct CorollaryInstance {
  Boundary beta;
  OrientationState state;
  EdgeId reversed = -1;
};
CorollaryInstance corollary_instance(const Multigraph& g, const Boundary& beta, Vertex v,
                                     const OrientationState& state);

/// Extension through corollary_instance: search the shifted instance, then
/// restore the reversed edge. Result satisfies beta itself.
std::optional<Orientation> extend_via_corollary(const Multigraph& g, const Boundary& beta, Vertex v,
                                                const OrientationState& state, const SearchLimits& limits = {});

}  // namespace nzflow
