#include "nzflow/z3_flows.hpp"

#include <algorithm>
#include <array>
#include <climits>
#include <type_traits>
#include <unordered_set>
#include <variant>

#include "nzflow/connectivity.hpp"
#include "nzflow/errors.hpp"
#include "nzflow/surgery.hpp"

namespace nzflow {
namespace {

struct Triple {
  Vertex s;
  std::array<EdgeId, 3> e;
};

using Plan = std::variant<Triple, std::vector<bool>>;

std::string key_of(const Orientation& o) {
  std::string k(o.size(), '0');
  for (std::size_t i = 0; i < o.size(); ++i) k[i] = o[i] ? '1' : '0';
  return k;
}

bool balanced(const Multigraph& g, Vertex v, const Preorientation& pre) {
  int net = 0;
  for (EdgeId id : g.incident(v)) {
    const Edge& e = g.edge(id);
    if (e.is_loop()) continue;
    const auto it = pre.find(id);
    if (it == pre.end()) return false;
    const Vertex from = it->second ? e.tail : e.head;
    net += from == v ? 1 : -1;
  }
  return ((net % 3) + 3) % 3 == 0;
}

// Lowest three distinct neighbours of s, each with its lowest edge.
std::optional<Triple> first_triple(const Multigraph& g, Vertex s) {
  const auto nbrs = g.neighbours(s);
  if (nbrs.size() < 3) return std::nullopt;
  Triple t{s, {-1, -1, -1}};
  for (EdgeId id : g.incident(s)) {
    const Vertex far = g.edge(id).other(s);
    for (int i = 0; i < 3; ++i) {
      if (far == nbrs[i] && t.e[i] < 0) t.e[i] = id;
    }
  }
  return t;
}

constexpr std::array<std::pair<int, int>, 3> kPairs{{{0, 1}, {0, 2}, {1, 2}}};

bool all_pairs_splittable(const Multigraph& g, const Triple& t) {
  for (auto [i, j] : kPairs) {
    if (six_split_blocker(g, t.s, t.e[i], t.e[j])) return false;
  }
  return true;
}

std::vector<bool> checked_cut(const Multigraph& g, Vertex v, std::vector<bool> side) {
  if (side[v]) side.flip();
  int inside = 0;
  for (bool b : side) inside += b ? 1 : 0;
  if (inside < 2 || g.num_vertices() - inside < 2 || g.cut_size(side) > 7) {
    throw InvariantViolation("degree-6 vertex gave no small cut");
  }
  return side;
}

// The reduction a degree-6 vertex s != v offers: a small cut, or a triple of
// pairwise 6-splittable edges.
Plan degree_six_plan(const Multigraph& g, Vertex v, Vertex s) {
  const int n = g.num_vertices();
  for (Vertex x : g.neighbours(s)) {
    if (g.multiplicity(s, x) < 3) continue;
    std::vector<bool> side(static_cast<std::size_t>(n), false);
    side[s] = side[x] = true;
    return checked_cut(g, v, std::move(side));
  }
  const auto t = first_triple(g, s);
  if (!t) throw InvariantViolation("degree-6 vertex with fewer than three neighbours");
  for (auto [i, j] : kPairs) {
    if (auto block = six_split_blocker(g, s, t->e[i], t->e[j])) {
      return checked_cut(g, v, block->mask(n));
    }
  }
  return *t;
}

// New-edge direction after lifting (e1, e2) at s, given prescribed directions.
std::optional<bool> carry_lift(const Multigraph& before, Vertex s, EdgeId e1, EdgeId e2, Preorientation& pre) {
  auto toward = [&](EdgeId id, bool forward) {
    const Edge& e = before.edge(id);
    return (forward ? e.head : e.tail) == s;
  };
  std::optional<bool> dir;
  if (const auto it = pre.find(e1); it != pre.end()) dir = toward(e1, it->second);
  if (const auto it = pre.find(e2); it != pre.end()) {
    const bool d = !toward(e2, it->second);
    if (dir && *dir != d) throw InvariantViolation("lift of two prescribed edges with clashing directions");
    dir = d;
  }
  pre.erase(e1);
  pre.erase(e2);
  return dir;
}

Orientation pulled_back(const Orientation& o, const ReductionTrace& trace, const LoopValues& loops) {
  const Flow f = pull_back_flow(orientation_to_flow(trace.final_graph(), o), trace, &loops);
  return flow_to_orientation(trace.original(), f);
}

class Recursion {
 public:
  Recursion(const Z3Options& options, Z3FamilyStats* stats, long long limit, const Z3Sink& sink)
      : opt_(options), stats_(stats), limit_(limit), sink_(sink) {}

  long long run(const Multigraph& g, Vertex v, const Preorientation& pre) {
    return solve(g, v, pre, 0, -1, [&](const Orientation& o) {
      ++emitted_;
      if (!sink_(o) || emitted_ >= limit_) stop_ = true;
      return !stop_;
    });
  }

  bool stopped() const { return stop_; }

 private:
  int record(const Z3Node& node) {
    if (!stats_) return -1;
    ++stats_->case_counts[node.tag];
    if (stats_->nodes.size() >= opt_.max_recorded_nodes) return -1;
    stats_->nodes.push_back(node);
    return static_cast<int>(stats_->nodes.size()) - 1;
  }

  Z3Node* node(int id) { return id >= 0 ? &stats_->nodes[id] : nullptr; }

  void check_measure(const Multigraph& parent, const Multigraph& child) {
    if (child.num_vertices() + child.num_edges() >= parent.num_vertices() + parent.num_edges()) {
      throw InvariantViolation("recursion does not shrink n + |E|");
    }
  }

  long long solve(const Multigraph& g, Vertex v, const Preorientation& pre, int depth, int parent, const Z3Sink& out) {
    if (!balanced(g, v, pre)) throw PreconditionError("preorientation at v is not balanced");
    const int n = g.num_vertices();
    Z3Node info;
    info.depth = depth;
    info.parent = parent;
    info.n = n;
    info.m = g.num_edges();

    std::unordered_set<std::string> seen;
    long long count = 0;
    auto emit = [&](const Orientation& o) {
      if (stop_) return false;
      if (!seen.insert(key_of(o)).second) return true;
      ++count;
      return out(o);
    };

    std::optional<Plan> plan;
    std::optional<CutCertificate> cut;
    if (n == 2) {
      info.tag = Z3Case::kBase;
    } else if ((plan = case_one(g, v))) {
      info.tag = Z3Case::kCase1;
    } else if ((cut = find_nontrivial_cut(g, 7, v))) {
      info.tag = Z3Case::kCase2;
      plan = cut->mask(n);
    } else if (n == 3 || n <= opt_.small_case_threshold) {
      info.tag = Z3Case::kCase3;
    } else if (auto s = degree_six_vertex(g, v)) {
      info.tag = Z3Case::kCase4;
      plan = degree_six_plan(g, v, *s);
      info.reduced_to = std::holds_alternative<Triple>(*plan) ? Z3Case::kCase1 : Z3Case::kCase2;
    } else {
      info.tag = Z3Case::kCase5;
    }

    std::optional<std::pair<EdgeId, EdgeId>> parallel;
    std::optional<CliqueRemoval> removal;
    if (info.tag == Z3Case::kCase5 && !(parallel = parallel_pair(g, v))) {
      removal = clique_removal(g, v);
      const int f = static_cast<int>(removal->kept.size());
      info.removable = f;
      info.cai = cai_check(removal->reduced);
      if (12 * f >= n - 2) {
        info.tag = Z3Case::kCaseA;
      } else {
        info.tag = Z3Case::kCaseB;
        const Vertex s = case_b_witness(g, *removal);
        plan = degree_six_plan(g, v, s);
        info.reduced_to = std::holds_alternative<Triple>(*plan) ? Z3Case::kCase1 : Z3Case::kCase2;
      }
    }

    const int self = record(info);
    switch (info.tag) {
      case Z3Case::kBase:
        base(g, pre, emit);
        break;
      case Z3Case::kCase3:
        case_three(g, v, pre, self, emit);
        break;
      case Z3Case::kCase5:
        case_five(g, v, pre, *parallel, depth, self, emit);
        break;
      case Z3Case::kCaseA:
        case_a(g, v, pre, removal->kept, self, emit);
        break;
      default:
        if (std::holds_alternative<Triple>(*plan)) {
          split_three_ways(g, v, pre, std::get<Triple>(*plan), depth, self, emit);
        } else {
          small_cut(g, v, pre, std::get<std::vector<bool>>(*plan), depth, self, emit);
        }
    }
    if (Z3Node* me = node(self)) {
      me->emitted = count;
      me->complete = !stop_;
    }
    return count;
  }

  std::optional<Plan> case_one(const Multigraph& g, Vertex v) {
    for (Vertex s = 0; s < g.num_vertices(); ++s) {
      if (s == v || g.degree(s) != 6) continue;
      const auto t = first_triple(g, s);
      if (t && all_pairs_splittable(g, *t)) return Plan(*t);
    }
    return std::nullopt;
  }

  static std::optional<Vertex> degree_six_vertex(const Multigraph& g, Vertex v) {
    for (Vertex s = 0; s < g.num_vertices(); ++s) {
      if (s != v && g.degree(s) == 6) return s;
    }
    return std::nullopt;
  }

  static std::optional<std::pair<EdgeId, EdgeId>> parallel_pair(const Multigraph& g, Vertex v) {
    for (Vertex x = 0; x < g.num_vertices(); ++x) {
      if (x == v) continue;
      for (Vertex y : g.neighbours(x)) {
        if (y <= x || y == v || g.multiplicity(x, y) < 2) continue;
        std::vector<EdgeId> between;
        for (EdgeId id : g.incident(x)) {
          if (g.edge(id).other(x) == y) between.push_back(id);
        }
        const EdgeId drop[] = {between[1]};
        if (is_k_edge_connected(g.without_edges(drop), 6)) return std::pair{between[1], between[0]};
      }
    }
    return std::nullopt;
  }

  static Vertex case_b_witness(const Multigraph& g, const CliqueRemoval& r) {
    std::vector<bool> excluded(static_cast<std::size_t>(r.reduced.num_vertices()), false);
    for (Vertex x : r.new_vertices) excluded[x] = true;
    for (EdgeId id : r.removable) {
      const Edge& e = r.expanded.edge(id);
      excluded[e.tail] = excluded[e.head] = true;
    }
    for (Vertex u = 0; u < g.num_vertices(); ++u) {
      const Vertex x = r.to_expanded[u];
      if (x >= 0 && !excluded[x] && r.reduced.degree(x) == 6) return u;
    }
    throw InvariantViolation("no degree-6 vertex away from the removed edges");
  }

  template <typename Emit>
  void base(const Multigraph& g, const Preorientation& pre, Emit& emit) {
    Orientation o;
    for (const Edge& e : g.edges()) {
      const auto it = pre.find(e.id);
      if (it == pre.end()) throw InvariantViolation("two-vertex graph with an edge off v");
      o.push_back(it->second);
    }
    emit(o);
  }

  template <typename Emit>
  void split_three_ways(const Multigraph& g, Vertex v, const Preorientation& pre, const Triple& t, int depth, int self,
                        Emit& emit) {
    const Group z3 = Group::cyclic(3);
    for (auto [i, j] : kPairs) {
      if (stop_) break;
      ReductionTrace trace(g);
      LoopValues loops;
      Preorientation p = pre;
      auto lift = [&](Surgery s) {
        EdgeId e1 = 0, e2 = 0, fresh = 0;
        Vertex at = 0;
        std::visit(
            [&](const auto& op) {
              using T = std::decay_t<decltype(op)>;
              if constexpr (std::is_same_v<T, LiftPair> || std::is_same_v<T, SuppressDeg2>) {
                at = op.v;
                e1 = op.e1;
                e2 = op.e2;
                fresh = op.new_edge;
              }
            },
            s.step.op);
        const auto dir = carry_lift(s.step.before, at, e1, e2, p);
        trace.append(std::move(s));
        if (trace.final_graph().edge(fresh).is_loop()) {
          loops[fresh] = z3.make(dir.value_or(true) ? 1 : 2);
          trace.append(delete_edge(trace.final_graph(), fresh));
        } else if (dir) {
          p[fresh] = *dir;
        }
      };
      lift(lift_pair(trace.final_graph(), t.s, t.e[i], t.e[j]));
      const auto [m1, m2] = find_splittable_pair(trace.final_graph(), t.s);
      lift(lift_pair(trace.final_graph(), t.s, m1, m2));
      lift(suppress_vertex(trace.final_graph(), t.s));

      const Multigraph& child = trace.final_graph();
      if (!is_k_edge_connected(child, 6)) throw InvariantViolation("split graph lost 6-edge-connectivity");
      check_measure(g, child);
      const long long got = solve(child, trace.map_vertex(v), p, depth + 1, self, [&](const Orientation& o) {
        return emit(pulled_back(o, trace, loops));
      });
      if (Z3Node* me = node(self)) me->child_counts.push_back(got);
    }
  }

  template <typename Emit>
  void small_cut(const Multigraph& g, Vertex v, const Preorientation& pre, const std::vector<bool>& side, int depth,
                 int self, Emit& emit) {
    std::vector<bool> rest = side;
    rest.flip();
    const Contraction outer = contract_vertex_set(g, side);
    const Contraction inner = contract_vertex_set(g, rest);
    check_measure(g, outer.graph);
    check_measure(g, inner.graph);
    if (Z3Node* me = node(self)) {
      me->n_prime = outer.graph.num_vertices();
      me->n_double_prime = inner.graph.num_vertices();
    }
    const auto crossing = g.cut_edges(side);
    long long inner_total = 0;

    const long long got = solve(outer.graph, outer.vertex_map[v], pre, depth + 1, self, [&](const Orientation& o1) {
      Preorientation across;
      for (EdgeId id : crossing) across[id] = o1[*outer.graph.index_of(id)];
      inner_total += solve(inner.graph, inner.merged, across, depth + 1, self, [&](const Orientation& o2) {
        Orientation o(static_cast<std::size_t>(g.num_edges()));
        const auto edges = g.edges();
        for (std::size_t k = 0; k < edges.size(); ++k) {
          const Edge& e = edges[k];
          const bool in_y = side[e.tail] && side[e.head];
          o[k] = in_y ? o2[*inner.graph.index_of(e.id)] : o1[*outer.graph.index_of(e.id)];
        }
        return emit(o);
      });
      return !stop_;
    });
    if (Z3Node* me = node(self)) me->child_counts = {got, inner_total};
  }

  template <typename Emit>
  void case_three(const Multigraph& g, Vertex v, const Preorientation& pre, int self, Emit& emit) {
    OrientationState state{pre};
    const Boundary zero = Boundary::zero(g.num_vertices());
    if (g.num_vertices() == 3) {
      for_each_extension(g, zero, state, LLONG_MAX, [&](const Orientation& o) { return emit(o); }, opt_.search);
      return;
    }
    const Vertex w = g.neighbours(v).front();
    EdgeId f = -1;
    for (EdgeId id : g.incident(v)) {
      if (g.edge(id).other(v) == w) {
        f = id;
        break;
      }
    }
    EdgeId e = -1;
    for (const Edge& x : g.edges()) {
      if (x.tail != v && x.tail != w && x.head != v && x.head != w) {
        e = x.id;
        break;
      }
    }
    if (e < 0) throw InvariantViolation("no edge away from v and its neighbour");
    const EdgeId removed[] = {std::min(e, f), std::max(e, f)};
    const Multigraph h = g.without_edges(removed);
    state.fixed.erase(f);

    for (bool e_forward : {true, false}) {
      if (stop_) break;
      Boundary beta = Boundary::zero(g.num_vertices());
      for (auto [id, forward] : {std::pair{e, e_forward}, std::pair{f, pre.at(f)}}) {
        const Edge& x = g.edge(id);
        const Vertex from = forward ? x.tail : x.head;
        beta.add(from, -1);
        beta.add(x.other(from), 1);
      }
      if (g.num_vertices() <= 16) {
        const bool ok = check_extend_hypotheses(h, beta, v).holds();
        if (Z3Node* me = node(self)) me->hypotheses = ok;
        if (!ok) throw InvariantViolation("extension hypotheses fail for a small graph");
      }
      const auto found = extend_orientation_search(h, beta, state, opt_.search);
      if (!found) throw InvariantViolation("no extension for a small graph");
      Orientation o(static_cast<std::size_t>(g.num_edges()));
      const auto edges = g.edges();
      for (std::size_t k = 0; k < edges.size(); ++k) {
        const EdgeId id = edges[k].id;
        o[k] = id == e ? e_forward : id == f ? pre.at(f) : (*found)[*h.index_of(id)];
      }
      if (!emit(o)) break;
    }
  }

  template <typename Emit>
  void case_five(const Multigraph& g, Vertex v, const Preorientation& pre, std::pair<EdgeId, EdgeId> ef, int depth,
                 int self, Emit& emit) {
    const auto [e, f] = ef;
    const EdgeId drop[] = {e};
    const Multigraph h = g.without_edges(drop);
    check_measure(g, h);
    const Edge& ee = g.edge(e);
    const Edge& fe = g.edge(f);
    const long long got = solve(h, v, pre, depth + 1, self, [&](const Orientation& oh) {
      Orientation o(static_cast<std::size_t>(g.num_edges()));
      const auto edges = g.edges();
      bool f_forward = false;
      for (std::size_t k = 0; k < edges.size(); ++k) {
        const EdgeId id = edges[k].id;
        if (id == e) continue;
        o[k] = oh[*h.index_of(id)];
        if (id == f) {
          o[k] = !o[k];
          f_forward = o[k];
        }
      }
      const Vertex from = f_forward ? fe.tail : fe.head;
      o[*g.index_of(e)] = ee.tail == from;
      return emit(o);
    });
    if (Z3Node* me = node(self)) me->child_counts = {got};
  }

  template <typename Emit>
  void case_a(const Multigraph& g, Vertex v, const Preorientation& pre, const std::vector<EdgeId>& F, int self,
              Emit& emit) {
    const Multigraph h = g.without_edges(F);
    const OrientationState state{pre};
    const std::size_t bits = F.size();
    for (unsigned long long mask = 0; !stop_; ++mask) {
      if (bits < 64 && mask >> bits) break;
      Boundary beta = Boundary::zero(g.num_vertices());
      for (std::size_t j = 0; j < bits; ++j) {
        const Edge& x = g.edge(F[j]);
        const bool forward = j >= 64 || !(mask >> j & 1ULL);
        const Vertex from = forward ? x.tail : x.head;
        beta.add(from, -1);
        beta.add(x.other(from), 1);
      }
      const auto found = extend_via_corollary(h, beta, v, state, opt_.search);
      if (!found) throw InvariantViolation("no extension after removing edges");
      Orientation o(static_cast<std::size_t>(g.num_edges()));
      const auto edges = g.edges();
      for (std::size_t k = 0; k < edges.size(); ++k) {
        const auto hi = h.index_of(edges[k].id);
        if (hi) {
          o[k] = (*found)[*hi];
        } else {
          const std::size_t j = static_cast<std::size_t>(std::find(F.begin(), F.end(), edges[k].id) - F.begin());
          o[k] = j >= 64 || !(mask >> j & 1ULL);
        }
      }
      if (!emit(o)) break;
    }
    if (Z3Node* me = node(self)) me->child_counts = {};
  }

  const Z3Options& opt_;
  Z3FamilyStats* stats_;
  long long limit_;
  Z3Sink sink_;
  long long emitted_ = 0;
  bool stop_ = false;
};

}  // namespace

std::string to_string(Z3Case c) {
  switch (c) {
    case Z3Case::kBase: return "Base";
    case Z3Case::kCase1: return "Case1";
    case Z3Case::kCase2: return "Case2";
    case Z3Case::kCase3: return "Case3";
    case Z3Case::kCase4: return "Case4";
    case Z3Case::kCase5: return "Case5";
    case Z3Case::kCaseA: return "CaseA";
    case Z3Case::kCaseB: return "CaseB";
  }
  return "?";
}

CaiCheck cai_check(const Multigraph& g) {
  CaiCheck c;
  c.vertices = g.num_vertices();
  c.simple = true;
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    if (g.degree(v) == 6) ++c.degree6;
    for (Vertex w : g.neighbours(v)) {
      if (g.multiplicity(v, w) > 1) c.simple = false;
    }
  }
  for (const Edge& e : g.edges()) c.simple = c.simple && !e.is_loop();
  return c;
}

CliqueRemoval clique_removal(const Multigraph& g, Vertex v) {
  Surgery s = clique_expansion(g, v);
  const auto& op = std::get<CliqueExpand>(s.step.op);
  CliqueRemoval r;
  r.new_vertices = op.new_vertices;
  r.to_expanded = s.step.vertex_map;
  r.expanded = std::move(s.graph);
  r.removable = maximal_removable_set(r.expanded, 6);
  std::vector<bool> fresh(static_cast<std::size_t>(r.expanded.num_vertices()), false);
  for (Vertex x : r.new_vertices) fresh[x] = true;
  for (EdgeId id : r.removable) {
    const Edge& e = r.expanded.edge(id);
    if (!fresh[e.tail] && !fresh[e.head]) r.kept.push_back(id);
  }
  r.reduced = r.expanded.without_edges(r.removable);
  return r;
}

long long z3_extensions(const Multigraph& g, Vertex v, const Preorientation& pre, long long limit, const Z3Sink& sink,
                        const Z3Options& options, Z3FamilyStats* stats) {
  if (limit <= 0) return 0;
  for (const Edge& e : g.edges()) {
    if (e.is_loop()) throw PreconditionError("recursion needs a loopless graph");
  }
  if (g.max_degree() > 7) throw PreconditionError("recursion needs maximum degree at most 7");
  if (g.num_vertices() < 2 || !is_k_edge_connected(g, 6)) throw PreconditionError("graph is not 6-edge-connected");
  Recursion rec(options, stats, limit, sink);
  return rec.run(g, v, pre);
}

Z3FamilyStats z3_flow_family(const Multigraph& g, long long limit, const Z3Sink& sink, const Z3Options& options) {
  if (g.num_vertices() < 2) throw PreconditionError("graph needs at least two vertices");
  GlobalCut cut = edge_connectivity(g);
  if (cut.value < 6) throw ConnectivityError("graph is not 6-edge-connected", std::move(cut.certificate));

  const Group z3 = Group::cyclic(3);
  Z3FamilyStats stats;
  stats.vertices = g.num_vertices();
  stats.guarantee = guaranteed_bound(BoundVariant::kZ3, g.num_vertices());

  ReductionTrace trace(g);
  LoopValues loops;
  for (const Edge& e : g.edges()) {
    if (!e.is_loop()) continue;
    loops[e.id] = z3.make(1);
    trace.append(delete_edge(trace.final_graph(), e.id));
  }
  for (Vertex v = 0; v < trace.final_graph().num_vertices();) {
    const Multigraph& cur = trace.final_graph();
    if (cur.degree(v) <= 7) {
      ++v;
      continue;
    }
    const auto [e1, e2] = find_splittable_pair_preserving_k(cur, v, 6);
    Surgery s = lift_pair(cur, v, e1, e2);
    const EdgeId fresh = std::get<LiftPair>(s.step.op).new_edge;
    trace.append(std::move(s));
    ++stats.split_lifts;
    if (trace.final_graph().edge(fresh).is_loop()) {
      loops[fresh] = z3.make(1);
      trace.append(delete_edge(trace.final_graph(), fresh));
    }
  }
  const Multigraph& h = trace.final_graph();
  if (limit <= 0) return stats;

  const Vertex v = 0;
  const auto& star = h.incident(v);
  const std::size_t d = star.size();
  std::unordered_set<std::string> seen;
  Recursion rec(options, &stats, limit, [&](const Orientation& o) {
    const Orientation full = pulled_back(o, trace, loops);
    if (seen.insert(key_of(full)).second) {
      ++stats.emitted;
      return sink(full);
    }
    return true;
  });
  for (unsigned code = 0; code < (1U << d) && !rec.stopped(); ++code) {
    Preorientation pre;
    for (std::size_t i = 0; i < d; ++i) pre[star[i]] = !(code >> (d - 1 - i) & 1U);
    if (!balanced(h, v, pre)) continue;
    ++stats.balanced_preorientations;
    rec.run(h, v, pre);
  }
  return stats;
}

}  // namespace nzflow
