#include "nzflow/boundary.hpp"

#include "nzflow/connectivity.hpp"
#include "nzflow/errors.hpp"

namespace nzflow {
namespace {

int mod3(int x) { return ((x % 3) + 3) % 3; }

// Net out-degree at every vertex, mod 3.
std::vector<int> net_out(const Multigraph& g, const Orientation& o) {
  std::vector<int> net(static_cast<std::size_t>(g.num_vertices()), 0);
  const auto edges = g.edges();
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const Edge& e = edges[i];
    if (e.is_loop()) continue;
    const Vertex from = o[i] ? e.tail : e.head;
    const Vertex to = o[i] ? e.head : e.tail;
    net[from] = mod3(net[from] + 1);
    net[to] = mod3(net[to] - 1);
  }
  return net;
}

class ExtensionSearch {
 public:
  ExtensionSearch(const Multigraph& g, const Boundary& beta, const OrientationState& state, const SearchLimits& limits)
      : g_(g), beta_(beta), limits_(limits), orientation_(static_cast<std::size_t>(g.num_edges()), true) {
    if (static_cast<int>(beta.values.size()) != g.num_vertices()) {
      throw PreconditionError("boundary size does not match the graph");
    }
    net_.assign(static_cast<std::size_t>(g.num_vertices()), 0);
    residual_.assign(static_cast<std::size_t>(g.num_vertices()), 0);
    const auto edges = g.edges();
    for (const auto& [id, forward] : state.fixed) {
      if (!g.has_edge(id)) throw PreconditionError("fixed edge is not in the graph");
    }
    for (std::size_t i = 0; i < edges.size(); ++i) {
      const Edge& e = edges[i];
      const auto it = state.fixed.find(e.id);
      if (it != state.fixed.end()) {
        orientation_[i] = it->second;
        if (!e.is_loop()) apply(e, it->second, +1);
      } else if (!e.is_loop()) {
        free_.push_back(i);
        ++residual_[e.tail];
        ++residual_[e.head];
      }
    }
    if (static_cast<int>(free_.size()) > limits.max_free_edges) throw CapExceeded("instance too large");
  }

  // Visits completions in order until `visit` returns false.
  template <typename Visit>
  void run(Visit&& visit) {
    for (Vertex v = 0; v < g_.num_vertices(); ++v) {
      if (!feasible(v)) return;
    }
    stopped_ = false;
    descend(0, visit);
  }

  const Orientation& orientation() const { return orientation_; }

 private:
  void apply(const Edge& e, bool forward, int sign) {
    const Vertex from = forward ? e.tail : e.head;
    const Vertex to = forward ? e.head : e.tail;
    net_[from] = mod3(net_[from] + sign);
    net_[to] = mod3(net_[to] - sign);
  }

  bool feasible(Vertex v) const {
    const int r = residual_[v];
    if (r == 0) return net_[v] == mod3(beta_.values[v]);
    if (r == 1) return net_[v] != mod3(beta_.values[v]);
    return true;
  }

  template <typename Visit>
  void descend(std::size_t depth, Visit& visit) {
    if (++nodes_ > limits_.node_budget) throw CapExceeded("instance too large");
    if (depth == free_.size()) {
      if (!visit(orientation_)) stopped_ = true;
      return;
    }
    const std::size_t i = free_[depth];
    const Edge& e = g_.edges()[i];
    --residual_[e.tail];
    --residual_[e.head];
    for (bool forward : {true, false}) {
      apply(e, forward, +1);
      if (feasible(e.tail) && feasible(e.head)) {
        orientation_[i] = forward;
        descend(depth + 1, visit);
      }
      apply(e, forward, -1);
      if (stopped_) break;
    }
    ++residual_[e.tail];
    ++residual_[e.head];
  }

  const Multigraph& g_;
  const Boundary& beta_;
  SearchLimits limits_;
  Orientation orientation_;
  std::vector<std::size_t> free_;
  std::vector<int> net_;
  std::vector<int> residual_;
  long long nodes_ = 0;
  bool stopped_ = false;
};

std::vector<bool> side_mask(int n, std::uint32_t bits, const std::vector<Vertex>& others, Vertex v) {
  std::vector<bool> side(static_cast<std::size_t>(n), false);
  side[v] = true;
  for (std::size_t j = 0; j < others.size(); ++j) {
    if (bits >> j & 1U) side[others[j]] = true;
  }
  return side;
}

}  // namespace

void Boundary::add(Vertex v, int delta) { values.at(v) = mod3(values.at(v) + delta); }

int Boundary::of(const std::vector<bool>& side) const {
  int sum = 0;
  for (std::size_t v = 0; v < values.size(); ++v) {
    if (side[v]) sum += values[v];
  }
  return mod3(sum);
}

bool Boundary::is_boundary() const {
  int sum = 0;
  for (int x : values) sum += x;
  return mod3(sum) == 0;
}

int sigma(const Multigraph& g, const Boundary& beta, const std::vector<bool>& side) {
  const bool even = g.cut_size(side) % 2 == 0;
  if (beta.of(side) == 0) return even ? 4 : 7;
  return even ? 6 : 5;
}

Flow orientation_to_flow(const Multigraph& g, const Orientation& o) {
  if (static_cast<int>(o.size()) != g.num_edges()) throw PreconditionError("orientation size does not match the graph");
  const Group z3 = Group::cyclic(3);
  Flow f(z3, g);
  const auto edges = g.edges();
  for (std::size_t i = 0; i < edges.size(); ++i) f.set(edges[i].id, z3.make(o[i] ? 1 : 2));
  return f;
}

Orientation flow_to_orientation(const Multigraph& g, const Flow& f) {
  if (f.group() != Group::cyclic(3)) throw PreconditionError("orientation needs a Z3 flow");
  Orientation o;
  o.reserve(static_cast<std::size_t>(g.num_edges()));
  for (const Edge& e : g.edges()) {
    const int r = f.at(e.id).residues[0];
    if (r == 0) throw PreconditionError("flow is zero on an edge");
    o.push_back(r == 1);
  }
  return o;
}

bool verify_beta_flow(const Multigraph& g, const Orientation& o, const Boundary& beta) {
  if (static_cast<int>(o.size()) != g.num_edges() || static_cast<int>(beta.values.size()) != g.num_vertices()) {
    return false;
  }
  const auto net = net_out(g, o);
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    if (net[v] != mod3(beta.values[v])) return false;
  }
  return true;
}

std::vector<EdgeId> OrientationState::free_edges(const Multigraph& g) const {
  std::vector<EdgeId> out;
  for (const Edge& e : g.edges()) {
    if (!fixed.contains(e.id)) out.push_back(e.id);
  }
  return out;
}

std::optional<Orientation> extend_orientation_search(const Multigraph& g, const Boundary& beta,
                                                     const OrientationState& state, const SearchLimits& limits) {
  ExtensionSearch search(g, beta, state, limits);
  std::optional<Orientation> found;
  search.run([&](const Orientation& o) {
    found = o;
    return false;
  });
  return found;
}

long long for_each_extension(const Multigraph& g, const Boundary& beta, const OrientationState& state, long long limit,
                             const OrientationSink& sink, const SearchLimits& limits) {
  if (limit <= 0) return 0;
  ExtensionSearch search(g, beta, state, limits);
  long long count = 0;
  search.run([&](const Orientation& o) {
    ++count;
    return sink(o) && count < limit;
  });
  return count;
}

HypothesisReport check_extend_hypotheses(const Multigraph& g, const Boundary& beta, Vertex v) {
  const int n = g.num_vertices();
  if (v < 0 || v >= n) throw PreconditionError("vertex out of range");
  if (n > 16) throw PreconditionError("use corollary form");
  HypothesisReport report;

  std::vector<Vertex> others;
  for (Vertex u = 0; u < n; ++u) {
    if (u != v) others.push_back(u);
  }
  const std::uint32_t full = (1U << others.size()) - 1;
  for (std::uint32_t bits = 1; bits < full; ++bits) {
    const auto side = side_mask(n, bits, others, v);
    if (g.cut_size(side) < sigma(g, beta, side)) {
      report.condition1 = false;
      std::vector<Vertex> members;
      for (Vertex u = 0; u < n; ++u) {
        if (side[u]) members.push_back(u);
      }
      report.violating_set = std::move(members);
      break;
    }
  }

  const auto single = side_mask(n, 0, others, v);
  if (n >= 2 && g.cut_size(single) > sigma(g, beta, single)) {
    report.condition2 = false;
    if (!report.violating_set) report.violating_set = std::vector<Vertex>{v};
  }
  return report;
}

bool check_corollary_hypotheses(const Multigraph& g, const Boundary& beta, Vertex v) {
  if (v < 0 || v >= g.num_vertices()) throw PreconditionError("vertex out of range");
  std::vector<bool> single(static_cast<std::size_t>(g.num_vertices()), false);
  single[v] = true;
  return is_k_edge_connected(g, 6) && g.cut_size(single) <= 7 && mod3(beta.at(v)) == 0;
}

CorollaryInstance corollary_instance(const Multigraph& g, const Boundary& beta, Vertex v,
                                     const OrientationState& state) {
  CorollaryInstance out{beta, state, -1};
  std::vector<bool> single(static_cast<std::size_t>(g.num_vertices()), false);
  single[v] = true;
  if (g.cut_size(single) != 6) return out;
  for (EdgeId id : g.incident(v)) {
    const Edge& e = g.edge(id);
    const auto it = state.fixed.find(id);
    if (e.is_loop() || it == state.fixed.end()) continue;
    const Vertex from = it->second ? e.tail : e.head;
    const Vertex to = e.other(from);
    out.beta.add(from, -2);
    out.beta.add(to, 2);
    out.state.fixed[id] = !it->second;
    out.reversed = id;
    return out;
  }
  throw PreconditionError("no preoriented edge at v to reverse");
}

std::optional<Orientation> extend_via_corollary(const Multigraph& g, const Boundary& beta, Vertex v,
                                                const OrientationState& state, const SearchLimits& limits) {
  const CorollaryInstance inst = corollary_instance(g, beta, v, state);
  auto o = extend_orientation_search(g, inst.beta, inst.state, limits);
  if (o && inst.reversed >= 0) {
    const std::size_t i = *g.index_of(inst.reversed);
    (*o)[i] = !(*o)[i];
  }
  return o;
}

}  // namespace nzflow
