#pragma once

#include <optional>
#include <span>
#include <utility>
#include <variant>
#include <vector>

#include "nzflow/errors.hpp"
#include "nzflow/multigraph.hpp"

namespace nzflow {

/// An edge cut delta(X): `side` is X, `crossing_edges` the edges with exactly
/// one end in X.
struct CutCertificate {
  std::vector<Vertex> side;
  std::vector<EdgeId> crossing_edges;

  int size() const { return static_cast<int>(crossing_edges.size()); }
  static CutCertificate of(const Multigraph& g, const std::vector<bool>& mask);
  std::vector<bool> mask(int n) const;
};

/// A precondition failure that carries the offending cut.
class ConnectivityError : public PreconditionError {
 public:
  ConnectivityError(const std::string& what, CutCertificate cert)
      : PreconditionError(what), certificate_(std::move(cert)) {}
  const CutCertificate& certificate() const { return certificate_; }

 private:
  CutCertificate certificate_;
};

/// Maximum number of pairwise edge-disjoint s-t paths.
int local_edge_connectivity(const Multigraph& g, Vertex s, Vertex t);

struct GlobalCut {
  int value = 0;
  CutCertificate certificate;
};

/// Global minimum edge cut. A disconnected graph yields 0 with the component
/// of vertex 0 as its side. Throws PreconditionError for n < 2.
GlobalCut edge_connectivity(const Multigraph& g);

/// True for graphs with at most one vertex.
bool is_k_edge_connected(const Multigraph& g, int k);

/// Smallest cut separating the vertex set `sources` from `sinks`, if its size
/// is at most `max_size`.
std::optional<CutCertificate> min_cut_between(const Multigraph& g, std::span<const Vertex> sources,
                                              std::span<const Vertex> sinks, int max_size);

/// First cut (by ascending vertex tuples) with at most `max_size` edges whose
/// both sides have at least two vertices; `outside` is kept off the side.
std::optional<CutCertificate> find_nontrivial_cut(const Multigraph& g, int max_size, Vertex outside);

/// Bridges of g (loops never are), ascending.
std::vector<EdgeId> bridges(const Multigraph& g);

/// A leaf of the bridge forest of g - covered; ties go to the component with
/// the lowest minimum vertex id. Returns its vertices ascending.
std::vector<Vertex> leaf_2ec_component(const Multigraph& g, const std::vector<bool>& covered);

/// True when lifting (e1, e2) at v keeps lambda(s, t) for all s, t != v.
bool is_splittable_pair(const Multigraph& g, Vertex v, EdgeId e1, EdgeId e2);

/// First splittable pair at v in ascending (e1, e2) order. Throws
/// PreconditionError when deg(v) is 3 or below 2, or v is on a cut-edge, and
/// InvariantViolation ("Mader violation") when no pair verifies.
std::pair<EdgeId, EdgeId> find_splittable_pair(const Multigraph& g, Vertex v);

/// First pair at v whose lift leaves g k-edge-connected. Requires g
/// k-edge-connected, k >= 2 and deg(v) >= k + 2.
std::pair<EdgeId, EdgeId> find_splittable_pair_preserving_k(const Multigraph& g, Vertex v, int k);

/// nullopt when (e1, e2) is 6-splittable at v: after lifting, every cut other
/// than the one around v has at least 6 edges. Otherwise the blocking cut,
/// reported in g (its size there is at most 7), with v outside its side.
std::optional<CutCertificate> six_split_blocker(const Multigraph& g, Vertex v, EdgeId e1, EdgeId e2);

/// First 6-splittable pair at v with distinct far ends, skipping edges in
/// `excluding`; otherwise the blocking cut of the first candidate pair.
std::variant<std::pair<EdgeId, EdgeId>, CutCertificate> find_6splittable_pair(const Multigraph& g, Vertex v,
                                                                              std::span<const EdgeId> excluding);

/// Greedy (ascending id) maximal F with g - F still k-edge-connected.
std::vector<EdgeId> maximal_removable_set(const Multigraph& g, int k);

bool is_minimally_k_edge_connected(const Multigraph& g, int k);

/// Two edge-disjoint spanning trees, as edge-id sets (ascending).
struct TreePair {
  std::vector<EdgeId> t1;
  std::vector<EdgeId> t2;

  friend bool operator==(const TreePair&, const TreePair&) = default;
  friend auto operator<=>(const TreePair&, const TreePair&) = default;
};

bool is_spanning_tree(const Multigraph& g, std::span<const EdgeId> edges);
bool is_valid_tree_pair(const Multigraph& g, const TreePair& p);

/// Edge-disjoint spanning tree pair by matroid-partition augmenting paths,
/// deterministic in edge order; nullopt when none exists.
std::optional<TreePair> pack_two_spanning_trees(const Multigraph& g);

}  // namespace nzflow
