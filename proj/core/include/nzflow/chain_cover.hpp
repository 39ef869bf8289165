#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "nzflow/bounds.hpp"
#include "nzflow/census.hpp"
#include "nzflow/flow.hpp"
#include "nzflow/multigraph.hpp"

namespace nzflow {

/// An edge together with the direction it is traversed in.
struct DirectedEdge {
  EdgeId id = 0;
  bool forward = true;  // tail -> head

  friend bool operator==(const DirectedEdge&, const DirectedEdge&) = default;
};

enum class ChainKind { kCycle, kProperChain, kSingleVertex };

/// A (u, v)-chain: a doubled path, possibly subdivided, or a single vertex.
/// The first chain of a cover is a cycle instead.
struct Chain {
  ChainKind kind = ChainKind::kSingleVertex;
  std::vector<Vertex> vertices;  // ascending
  std::vector<EdgeId> edge_ids;  // ascending
  Vertex u = 0;
  Vertex v = 0;
  /// Each block as a directed cycle; the lowest-id edge of the block runs forward.
  std::vector<std::vector<DirectedEdge>> cycles;

  // Anchors, absent on the first chain. in_anchor joins u to x, out_anchor
  // joins v to y, where x and y lie on earlier chains.
  EdgeId in_anchor = -1;
  EdgeId out_anchor = -1;
  Vertex x = -1;
  Vertex y = -1;
};

struct ChainCover {
  std::vector<Chain> chains;
  std::vector<EdgeId> external;            // ascending; includes every loop
  std::vector<EdgeId> even_anchor_subset;  // ascending
  int p = 0;                               // cycles over all chains

  int k() const { return static_cast<int>(chains.size()); }
  /// Anchor ids in chain order (in, out, in, out, ...).
  std::vector<EdgeId> anchors() const;
  std::vector<EdgeId> chain_edges() const;
};

/// Builds a cover by growing from a shortest cycle. Requires g to be
/// 3-edge-connected with at least two vertices; otherwise throws
/// ConnectivityError carrying a cut of at most two edges.
ChainCover build_anchored_chain_cover(const Multigraph& g);

/// A maximal subset of `anchors` meeting every vertex an even number of
/// times. Its complement within `anchors` is a forest.
std::vector<EdgeId> compute_even_anchor_subset(const Multigraph& g, std::span<const EdgeId> anchors);

/// nullopt for a valid cover, otherwise a description of the first defect.
std::optional<std::string> cover_violation(const Multigraph& g, const ChainCover& cover);

/// ceil(2^|X| * 3^(p + |A'|/2)).
BigInt cover_count_bound(const ChainCover& cover);

struct CoverGeneration {
  long long emitted = 0;
  /// Number of distinct flows the choice tree is known to hold, counted from
  /// choice multiplicities without enumerating.
  BigInt certified;
};

/// Emits distinct nowhere-zero Z2xZ3 flows built from the cover, in
/// lexicographic order of the choice vector (external values, then anchor
/// corrections from the last chain down, then cycle shifts).
CoverGeneration generate_from_cover(const Multigraph& g, const ChainCover& cover, long long limit,
                                    const FlowSink& sink);

/// The certified count of generate_from_cover without generating anything.
BigInt certified_cover_count(const Multigraph& g, const ChainCover& cover);

/// A nowhere-zero Z2xZ3 flow whose Z3 part vanishes only on chain edges, on at
/// most a third of them.
Flow special_sparse_zero_flow(const Multigraph& g, const ChainCover& cover);

struct CubicAnalysis {
  std::vector<Vertex> K;        // vertices on cover cycles
  std::vector<Vertex> J;        // the rest
  std::vector<EdgeId> H;        // edges off the cover cycles, anchors included
  int q = 0;                    // components of (V, H)
  std::vector<EdgeId> W;        // chain edges with nonzero Z3 part in the special flow
  std::vector<EdgeId> W_prime;  // greedy: H + W' stays acyclic
  Flow special;
};

/// Requires g cubic. Throws InvariantViolation if H is not a forest.
CubicAnalysis analyse_cubic(const Multigraph& g, const ChainCover& cover);

/// The 2^|W \ W'| flows obtained by toggling the Z2 part of the special flow
/// along the fundamental cycle of each chosen edge of W \ W'. Subsets are
/// visited in binary counting order over W \ W' ascending.
long long toggled_flows(const Multigraph& g, const CubicAnalysis& a, long long limit, const FlowSink& sink);

struct CubicFamilyStats {
  long long emitted = 0;
  BigInt cover_certified;
  BigInt toggle_certified;
};

/// Flows of a 3-edge-connected cubic graph from both the cover generator and
/// the toggling construction, deduplicated, larger certified branch first.
CubicFamilyStats cubic_flow_family(const Multigraph& g, long long limit, const FlowSink& sink);

}  // namespace nzflow
