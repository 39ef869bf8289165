#pragma once

#include <compare>
#include <span>
#include <string>
#include <vector>

#include "nzflow/group.hpp"
#include "nzflow/multigraph.hpp"

namespace nzflow {

/// Group values on the edges of one graph, against each edge's stored
/// tail -> head direction (traversing head -> tail negates). Edge ids are kept
/// in ascending order, matching Multigraph::edges().
class Flow {
 public:
  /// The zero flow on E(g).
  Flow(Group group, const Multigraph& g);
  Flow(Group group, std::vector<EdgeId> ids, std::vector<GroupElem> values);

  const Group& group() const { return group_; }
  std::span<const EdgeId> edge_ids() const { return ids_; }
  std::span<const GroupElem> values() const { return values_; }
  std::size_t size() const { return ids_.size(); }

  GroupElem at(EdgeId id) const;
  void set(EdgeId id, GroupElem value);
  /// Adds `delta` on `id` when traversed tail -> head, or subtracts it when
  /// `forward` is false.
  void push(EdgeId id, GroupElem delta, bool forward = true);

  /// Comma-separated residue tuples in ascending edge-id order, components
  /// joined by '|', e.g. "1|2,0|1,1|0".
  std::string serialize() const;

  friend bool operator==(const Flow& a, const Flow& b) {
    return a.group_ == b.group_ && a.ids_ == b.ids_ && a.values_ == b.values_;
  }

 private:
  std::size_t slot(EdgeId id) const;

  Group group_;
  std::vector<EdgeId> ids_;
  std::vector<GroupElem> values_;
};

/// Kirchhoff's law at every vertex. Throws PreconditionError when the flow is
/// not defined on exactly E(g).
bool validate_flow(const Multigraph& g, const Flow& f);

bool is_nowhere_zero(const Flow& f);

}  // namespace nzflow
