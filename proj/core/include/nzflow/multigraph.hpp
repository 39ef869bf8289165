#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace nzflow {

using Vertex = int;
using EdgeId = int;

/// One edge record. `tail -> head` is the reference orientation; flows are
/// stated against it. Loops have tail == head.
struct Edge {
  EdgeId id = 0;
  Vertex tail = 0;
  Vertex head = 0;

  bool is_loop() const { return tail == head; }
  Vertex other(Vertex v) const { return v == tail ? head : tail; }

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Loops and parallel edges allowed. Vertices are 0..n-1. Edge ids are
/// unique, stored in ascending order, and never reused: every edge added
/// later gets an id above all ids the graph has ever held.
class Multigraph {
 public:
  Multigraph() = default;
  explicit Multigraph(int n);

  /// Appends an edge with a fresh id and returns that id.
  EdgeId add_edge(Vertex tail, Vertex head);

  int num_vertices() const { return n_; }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  std::span<const Edge> edges() const { return edges_; }

  bool has_edge(EdgeId id) const { return index_of(id).has_value(); }
  std::optional<std::size_t> index_of(EdgeId id) const;
  const Edge& edge(EdgeId id) const;

  /// Degree with loops counted twice.
  int degree(Vertex v) const;
  int max_degree() const;
  /// Incident edge ids in ascending order; a loop is listed once.
  const std::vector<EdgeId>& incident(Vertex v) const { return incidence_.at(v); }
  /// Number of edges joining u and w (u != w).
  int multiplicity(Vertex u, Vertex w) const;
  /// Distinct neighbours of v other than v, ascending.
  std::vector<Vertex> neighbours(Vertex v) const;
  std::vector<EdgeId> edge_ids() const;

  EdgeId next_edge_id() const { return next_id_; }

  /// Same vertex set and ids with the listed edges removed.
  Multigraph without_edges(std::span<const EdgeId> ids) const;

  /// Number of edges with exactly one end in the marked vertex set.
  int cut_size(const std::vector<bool>& side) const;
  std::vector<EdgeId> cut_edges(const std::vector<bool>& side) const;

  friend bool operator==(const Multigraph& a, const Multigraph& b) {
    return a.n_ == b.n_ && a.next_id_ == b.next_id_ && a.edges_ == b.edges_;
  }

 private:
  friend class GraphBuilder;

  void check_vertex(Vertex v) const;

  int n_ = 0;
  EdgeId next_id_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<EdgeId>> incidence_;
};

/// Assembles a graph whose edges keep caller-chosen ids. Used by surgeries
/// that carry surviving edges over unchanged and mint fresh ids for new ones.
class GraphBuilder {
 public:
  GraphBuilder(int n, EdgeId first_free_id);

  /// Keeps `id`; ids must be added in strictly ascending order.
  void keep_edge(EdgeId id, Vertex tail, Vertex head);
  /// Mints a new id above every id handed to the builder so far.
  EdgeId new_edge(Vertex tail, Vertex head);

  Multigraph build() &&;

 private:
  Multigraph g_;
};

}  // namespace nzflow
