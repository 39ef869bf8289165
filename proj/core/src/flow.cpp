#include "nzflow/flow.hpp"

#include <algorithm>

#include "nzflow/errors.hpp"

namespace nzflow {

Flow::Flow(Group group, const Multigraph& g)
    : group_(group), ids_(g.edge_ids()), values_(ids_.size(), group.zero()) {}

Flow::Flow(Group group, std::vector<EdgeId> ids, std::vector<GroupElem> values)
    : group_(group), ids_(std::move(ids)), values_(std::move(values)) {
  if (ids_.size() != values_.size()) throw PreconditionError("flow ids and values differ in length");
  if (!std::is_sorted(ids_.begin(), ids_.end()) ||
      std::adjacent_find(ids_.begin(), ids_.end()) != ids_.end()) {
    throw PreconditionError("flow edge ids must be strictly ascending");
  }
  for (GroupElem v : values_) {
    if (!group_.contains(v)) throw PreconditionError("flow value outside its group");
  }
}

std::size_t Flow::slot(EdgeId id) const {
  auto it = std::lower_bound(ids_.begin(), ids_.end(), id);
  if (it == ids_.end() || *it != id) {
    throw PreconditionError("flow is not defined on edge " + std::to_string(id));
  }
  return static_cast<std::size_t>(it - ids_.begin());
}

GroupElem Flow::at(EdgeId id) const { return values_[slot(id)]; }

void Flow::set(EdgeId id, GroupElem value) { values_[slot(id)] = value; }

void Flow::push(EdgeId id, GroupElem delta, bool forward) {
  GroupElem& v = values_[slot(id)];
  v = forward ? group_.add(v, delta) : group_.sub(v, delta);
}

std::string Flow::serialize() const {
  std::string out;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (i) out += ',';
    out += group_.format(values_[i]);
  }
  return out;
}

bool validate_flow(const Multigraph& g, const Flow& f) {
  const auto ids = f.edge_ids();
  if (static_cast<int>(ids.size()) != g.num_edges()) {
    throw PreconditionError("flow domain differs from the graph's edge set");
  }
  const Group& grp = f.group();
  std::vector<GroupElem> net(static_cast<std::size_t>(g.num_vertices()), grp.zero());
  const auto edges = g.edges();
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (edges[i].id != ids[i]) throw PreconditionError("flow domain differs from the graph's edge set");
    if (edges[i].is_loop()) continue;
    const GroupElem v = f.values()[i];
    net[edges[i].head] = grp.add(net[edges[i].head], v);
    net[edges[i].tail] = grp.sub(net[edges[i].tail], v);
  }
  return std::all_of(net.begin(), net.end(), [&](GroupElem x) { return grp.is_zero(x); });
}

bool is_nowhere_zero(const Flow& f) {
  const auto vals = f.values();
  return std::none_of(vals.begin(), vals.end(), [&](GroupElem x) { return f.group().is_zero(x); });
}

}  // namespace nzflow
