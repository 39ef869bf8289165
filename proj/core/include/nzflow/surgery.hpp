#pragma once

#include <map>
#include <utility>
#include <variant>
#include <vector>

#include "nzflow/flow.hpp"
#include "nzflow/multigraph.hpp"

namespace nzflow {

// Surgery records. Vertex labels refer to the graph *before* the step unless
// noted; edge ids are global (surviving edges keep their id, new edges get
// fresh ones).

/// e1 = (v, a) and e2 = (v, b) replaced by new_edge oriented a -> b.
struct LiftPair {
  Vertex v;
  EdgeId e1;
  EdgeId e2;
  EdgeId new_edge;
};

/// A lift at a degree-2 vertex; v always disappears.
struct SuppressDeg2 {
  Vertex v;
  EdgeId e1;
  EdgeId e2;
  EdgeId new_edge;
};

/// `removed_vertex` merged into `merged_vertex`; edges parallel to e become loops.
struct ContractEdge {
  EdgeId e;
  Vertex merged_vertex;
  Vertex removed_vertex;
};

struct DeleteEdge {
  EdgeId e;
};

struct Subdivision {
  EdgeId old_edge;
  Vertex new_vertex;   // label in the expanded graph
  EdgeId pendant_edge; // joins the far end of old_edge to new_vertex
};

struct CliqueExpand {
  Vertex center;
  std::vector<Vertex> new_vertices;  // labels in the expanded graph
  std::vector<Subdivision> subdivisions;
  std::vector<EdgeId> clique_edges;
  std::vector<EdgeId> deleted_loops;
};

using SurgeryOp = std::variant<LiftPair, SuppressDeg2, ContractEdge, DeleteEdge, CliqueExpand>;

struct SurgeryStep {
  SurgeryOp op;
  Multigraph before;
  /// before-label -> after-label, -1 for deleted vertices.
  std::vector<Vertex> vertex_map;
};

struct Surgery {
  Multigraph graph;
  SurgeryStep step;
};

/// An ordered sequence of surgeries from `original` to `final_graph()`.
class ReductionTrace {
 public:
  ReductionTrace() = default;
  explicit ReductionTrace(Multigraph original);

  const Multigraph& original() const { return original_; }
  const Multigraph& final_graph() const { return final_; }
  const std::vector<SurgeryStep>& steps() const { return steps_; }

  /// Appends a surgery whose `before` graph must equal final_graph().
  void append(Surgery s);

  /// Re-executes every recorded operation starting from original().
  Multigraph replay() const;

  /// Maps a vertex of original() to its label in final_graph(), or -1.
  Vertex map_vertex(Vertex v) const;

 private:
  Multigraph original_;
  Multigraph final_;
  std::vector<SurgeryStep> steps_;
};

/// Lifts (e1, e2) at v. Throws PreconditionError if e1 == e2, either is a
/// loop, or either misses v. v is deleted when it becomes isolated.
Surgery lift_pair(const Multigraph& g, Vertex v, EdgeId e1, EdgeId e2);

/// Suppresses a vertex of degree 2 carrying no loop.
Surgery suppress_vertex(const Multigraph& g, Vertex v);

/// Contracting a loop deletes it (recorded as DeleteEdge).
Surgery contract_edge(const Multigraph& g, EdgeId e);

Surgery delete_edge(const Multigraph& g, EdgeId e);

/// Deletes loops at u, subdivides every other edge at u, joins the new
/// vertices by a clique and deletes u. Requires at least two vertices.
Surgery clique_expansion(const Multigraph& g, Vertex u);

/// Lifts at vertices of degree above dmax, keeping k-edge-connectivity, until
/// the maximum degree is at most dmax. Throws PreconditionError when g is not
/// k-edge-connected or dmax < k, and InvariantViolation when no lift is found.
std::pair<Multigraph, ReductionTrace> suppress_or_split_to_max_degree(const Multigraph& g, int k, int dmax);

/// Values for deleted loops, which carry no Kirchhoff constraint.
using LoopValues = std::map<EdgeId, GroupElem>;

/// Transports a flow on the reduced graph back to trace.original(). Lifts copy
/// the new edge's value with orientation signs; contractions rebuild the
/// removed edge from Kirchhoff's law at the removed endpoint; a deleted loop
/// takes its value from `loop_values`. Throws PreconditionError for other
/// deletions and for clique expansions.
Flow pull_back_flow(const Flow& f, const ReductionTrace& trace, const LoopValues* loop_values = nullptr);
Flow pull_back_step(const Flow& f, const SurgeryStep& step, const LoopValues* loop_values = nullptr);

/// Identifies the marked vertex set to a single vertex (appended last) and
/// drops the loops this creates. Edge ids are preserved.
struct Contraction {
  Multigraph graph;
  std::vector<Vertex> vertex_map;
  Vertex merged;
  std::vector<EdgeId> dropped_loops;
};
Contraction contract_vertex_set(const Multigraph& g, const std::vector<bool>& side);

}  // namespace nzflow
