#pragma once

#include <functional>
#include <span>
#include <vector>

#include "nzflow/bounds.hpp"
#include "nzflow/census.hpp"
#include "nzflow/connectivity.hpp"
#include "nzflow/flow.hpp"
#include "nzflow/multigraph.hpp"

namespace nzflow {

/// The Z2-flow that is 1 on every edge off `tree`.
struct CanonicalFlowInfo {
  std::vector<EdgeId> tree;
  Flow flow;
  std::vector<EdgeId> ones_on_tree;

  int q() const { return static_cast<int>(ones_on_tree.size()); }
};

/// Throws PreconditionError when `tree` is not a spanning tree of g.
CanonicalFlowInfo canonical_z2_flow(const Multigraph& g, std::span<const EdgeId> tree);

/// Completes a Z2 assignment on the edges off `tree` to a Z2-flow by leaf
/// elimination. `values` is indexed like g.edges(); tree slots are overwritten.
std::vector<std::uint8_t> solve_on_tree(const Multigraph& g, std::span<const EdgeId> tree,
                                        std::vector<std::uint8_t> values);

/// The 2^q nowhere-zero Z2xZ2 flows whose first coordinate is the canonical
/// flow of t1, one for each assignment on ones_on_tree(t1), in binary counting
/// order over those edges. Returns q.
int flows_from_tree_pair(const Multigraph& g, const TreePair& pair, long long limit, const FlowSink& sink);

/// One flip. v must be a leaf of t1, have degree 2 in both trees, or be a
/// leaf of t2 (handled as a t1 leaf with the trees exchanged).
TreePair flip_at(const Multigraph& g, const TreePair& pair, Vertex v);

struct FlipAnalysis {
  std::vector<Vertex> L1;
  std::vector<Vertex> L2;
  std::vector<Vertex> V4;
  std::vector<Vertex> X;  // independent in t1 + t2, inside L1 u L2 u V4
};

FlipAnalysis analyse_flips(const Multigraph& g, const TreePair& pair);

/// ceil(2^(max(n - n1 - n2, (n1 + n2)/2) / 4)) rounded up in the exponent.
BigInt tree_pair_guarantee(const FlipAnalysis& a, int n);

using TreePairSink = std::function<bool(const TreePair&)>;

/// Flips at every subset of X in ascending vertex order, subsets in binary
/// counting order, emitting each resulting ordered pair once. Returns the
/// number emitted.
long long tree_pair_family(const Multigraph& g, const TreePair& pair, long long limit, const TreePairSink& sink);

/// Exactly 3^(m - 2n + 2) nowhere-zero Z2xZ2 flows: leftover edges range over
/// (1,0), (0,1), (1,1) in lexicographic order. Returns the number emitted.
long long z4_family_dense(const Multigraph& g, const TreePair& pair, long long limit, const FlowSink& sink);

/// The Z2xZ2 flow made of the canonical flows of both trees.
Flow canonical_pair_flow(const Multigraph& g, const TreePair& pair);

struct Z4FamilyOptions {
  long long pair_scan_limit = 1 << 12;
};

struct Z4FamilyStats {
  TreePair packing;
  int best_q = 0;
  long long pairs_scanned = 0;
  BigInt dense_count;
  long long emitted = 0;
};

/// Union, deduplicated, of the dense family, the 2^q family of the best pair
/// seen while scanning the tree-pair family (both orders), and the canonical
/// pair flows over that family. Throws PreconditionError when g has no two
/// disjoint spanning trees.
Z4FamilyStats z4_flow_family(const Multigraph& g, long long limit, const FlowSink& sink,
                             const Z4FamilyOptions& options = {});

}  // namespace nzflow
