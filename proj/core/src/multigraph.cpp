#include "nzflow/multigraph.hpp"

#include <algorithm>
#include <string>

#include "nzflow/errors.hpp"

namespace nzflow {

Multigraph::Multigraph(int n) : n_(n), incidence_(static_cast<std::size_t>(std::max(n, 0))) {
  if (n < 0) throw PreconditionError("vertex count must be non-negative");
}

void Multigraph::check_vertex(Vertex v) const {
  if (v < 0 || v >= n_) {
    throw PreconditionError("vertex " + std::to_string(v) + " out of range [0, " +
                            std::to_string(n_) + ")");
  }
}

EdgeId Multigraph::add_edge(Vertex tail, Vertex head) {
  check_vertex(tail);
  check_vertex(head);
  const EdgeId id = next_id_++;
  edges_.push_back({id, tail, head});
  incidence_[tail].push_back(id);
  if (head != tail) incidence_[head].push_back(id);
  return id;
}

std::optional<std::size_t> Multigraph::index_of(EdgeId id) const {
  auto it = std::lower_bound(edges_.begin(), edges_.end(), id,
                             [](const Edge& e, EdgeId x) { return e.id < x; });
  if (it == edges_.end() || it->id != id) return std::nullopt;
  return static_cast<std::size_t>(it - edges_.begin());
}

const Edge& Multigraph::edge(EdgeId id) const {
  auto idx = index_of(id);
  if (!idx) throw PreconditionError("no edge with id " + std::to_string(id));
  return edges_[*idx];
}

int Multigraph::degree(Vertex v) const {
  check_vertex(v);
  int d = 0;
  for (EdgeId id : incidence_[v]) d += edge(id).is_loop() ? 2 : 1;
  return d;
}

int Multigraph::max_degree() const {
  int best = 0;
  for (Vertex v = 0; v < n_; ++v) best = std::max(best, degree(v));
  return best;
}

int Multigraph::multiplicity(Vertex u, Vertex w) const {
  int count = 0;
  for (EdgeId id : incident(u)) {
    const Edge& e = edge(id);
    if (!e.is_loop() && e.other(u) == w) ++count;
  }
  return count;
}

std::vector<Vertex> Multigraph::neighbours(Vertex v) const {
  std::vector<Vertex> out;
  for (EdgeId id : incident(v)) {
    const Edge& e = edge(id);
    if (!e.is_loop()) out.push_back(e.other(v));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<EdgeId> Multigraph::edge_ids() const {
  std::vector<EdgeId> ids;
  ids.reserve(edges_.size());
  for (const Edge& e : edges_) ids.push_back(e.id);
  return ids;
}

Multigraph Multigraph::without_edges(std::span<const EdgeId> ids) const {
  std::vector<EdgeId> drop(ids.begin(), ids.end());
  std::sort(drop.begin(), drop.end());
  GraphBuilder b(n_, next_id_);
  for (const Edge& e : edges_) {
    if (!std::binary_search(drop.begin(), drop.end(), e.id)) b.keep_edge(e.id, e.tail, e.head);
  }
  return std::move(b).build();
}

int Multigraph::cut_size(const std::vector<bool>& side) const {
  int count = 0;
  for (const Edge& e : edges_) count += side[e.tail] != side[e.head] ? 1 : 0;
  return count;
}

std::vector<EdgeId> Multigraph::cut_edges(const std::vector<bool>& side) const {
  std::vector<EdgeId> out;
  for (const Edge& e : edges_) {
    if (side[e.tail] != side[e.head]) out.push_back(e.id);
  }
  return out;
}

GraphBuilder::GraphBuilder(int n, EdgeId first_free_id) : g_(n) { g_.next_id_ = first_free_id; }

void GraphBuilder::keep_edge(EdgeId id, Vertex tail, Vertex head) {
  g_.check_vertex(tail);
  g_.check_vertex(head);
  if (!g_.edges_.empty() && id <= g_.edges_.back().id) {
    throw InvariantViolation("GraphBuilder: kept edge ids must be ascending");
  }
  g_.edges_.push_back({id, tail, head});
  g_.incidence_[tail].push_back(id);
  if (head != tail) g_.incidence_[head].push_back(id);
  g_.next_id_ = std::max(g_.next_id_, id + 1);
}

EdgeId GraphBuilder::new_edge(Vertex tail, Vertex head) {
  const EdgeId id = g_.next_id_;
  keep_edge(id, tail, head);
  return id;
}

Multigraph GraphBuilder::build() && { return std::move(g_); }

}  // namespace nzflow
