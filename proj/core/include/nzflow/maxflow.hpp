#pragma once

#include <limits>
#include <span>
#include <vector>

#include "nzflow/multigraph.hpp"

namespace nzflow {

/// Augmenting-path max-flow over an undirected multigraph with unit edge
/// capacities, plus optional extra directed arcs (for super sources/sinks).
class UnitFlowNetwork {
 public:
  static constexpr int kInfinite = std::numeric_limits<int>::max() / 4;

  /// Every non-loop edge of g not listed in `skip` becomes a unit-capacity
  /// undirected link. Node ids 0..n-1 are the graph's vertices.
  explicit UnitFlowNetwork(const Multigraph& g, std::span<const EdgeId> skip = {});

  int add_node();
  void add_arc(int from, int to, int capacity);

  /// Pushes flow from s to t until saturated or `bound` units are reached.
  int max_flow(int s, int t, int bound = kInfinite);

  /// Nodes reachable from s in the residual network after max_flow().
  std::vector<bool> residual_reachable(int s) const;

  /// For each graph edge carrying flow: (edge id, true if flow runs tail->head).
  std::vector<std::pair<EdgeId, bool>> used_edges() const;

  int num_nodes() const { return static_cast<int>(adj_.size()); }

 private:
  struct Arc {
    int to;
    int cap;
    int rev;
    EdgeId edge;  // -1 for auxiliary arcs
    bool forward; // tail->head of the graph edge
  };

  int augment(int s, int t);

  std::vector<std::vector<Arc>> adj_;
};

}  // namespace nzflow
