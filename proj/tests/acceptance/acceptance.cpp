// Acceptance run: one PASS/FAIL line per criterion. `--long` runs the K7 tier
// of the Z3 pipeline instead of the default set.

#include <chrono>
#include <climits>
#include <cmath>
#include <cstring>
#include <functional>
#include <iomanip>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <unordered_set>

#include "generators.hpp"
#include "nzflow/boundary.hpp"
#include "nzflow/census.hpp"
#include "nzflow/chain_cover.hpp"
#include "nzflow/connectivity.hpp"
#include "nzflow/families.hpp"
#include "nzflow/surgery.hpp"
#include "nzflow/z3_flows.hpp"
#include "nzflow/z4_flows.hpp"
#include "nzflow/z6_flows.hpp"
#include "oracle.hpp"

using namespace nzflow;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream notes;

  void fail(const std::string& why) {
    if (pass) notes.str("");
    if (!pass) notes << "; ";
    pass = false;
    notes << why;
  }
};

int failures = 0;

void criterion(int id, const std::string& title, double seconds_allowed, const std::function<void(Outcome&)>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome out;
  try {
    body(out);
  } catch (const std::exception& e) {
    out.fail(std::string("exception: ") + e.what());
  }
  const double took = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (took > seconds_allowed) out.fail("took " + std::to_string(took) + " s");
  if (!out.pass) ++failures;
  std::cout << "criterion " << id << ": " << (out.pass ? "PASS" : "FAIL") << "  " << title << "  [" << std::fixed
            << std::setprecision(2) << took << " s]";
  const std::string notes = out.notes.str();
  if (!notes.empty()) std::cout << "  (" << notes << ")";
  std::cout << std::endl;
}

BigInt pow_big(long long base, int exp) {
  BigInt out = 1;
  for (int i = 0; i < exp; ++i) out *= base;
  return out;
}

// Distinct, valid and nowhere-zero flows collected from a generator.
struct FlowCheck {
  const Multigraph& g;
  std::unordered_set<std::string> seen;
  long long emitted = 0;
  long long bad = 0;

  bool operator()(const Flow& f) {
    ++emitted;
    if (!validate_flow(g, f) || !is_nowhere_zero(f)) ++bad;
    seen.insert(f.serialize());
    return true;
  }
  long long distinct() const { return static_cast<long long>(seen.size()); }
  bool clean() const { return bad == 0 && distinct() == emitted; }
};

void extremal_family(Outcome& out) {
  const Group grp = Group::z2xz3();
  int checked = 0;
  for (int n = 3; n <= 8; ++n) {
    for (int d = 0; d <= 4; ++d) {
      if (d > n) continue;  // an n-cycle has only n edges to double
      ++checked;
      const BigInt got = count_nz_flows(cycle_with_doubled_edges(n, d), grp);
      if (got != 5 * pow_big(4, d)) {
        std::ostringstream s;
        s << "n=" << n << " d=" << d << " count " << got << " != " << 5 * pow_big(4, d);
        out.fail(s.str());
      }
    }
  }
  for (int n = 3; n <= 6; ++n) {
    const BigInt got = count_nz_flows(cycle_with_doubled_edges(n, n), grp);
    if (got != 5 * pow_big(4, n)) {
      std::ostringstream s;
      s << "doubled_cycle(" << n << ") count " << got << " != " << 5 * pow_big(4, n) << " (difference "
        << got - 5 * pow_big(4, n) << " = 5^" << n << ")";
      out.fail(s.str());
    }
  }
  if (out.pass) out.notes << checked << " cycles and 4 doubled cycles";
}

void group_invariance(Outcome& out) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const Multigraph g = gen::random_multigraph(seed);
    if (count_nz_flows(g, Group::cyclic(4)) != count_nz_flows(g, Group::z2xz2())) {
      out.fail("Z4 vs Z2xZ2 differ at seed " + std::to_string(seed));
    }
    if (count_nz_flows(g, Group::cyclic(6)) != count_nz_flows(g, Group::z2xz3())) {
      out.fail("Z6 vs Z2xZ3 differ at seed " + std::to_string(seed));
    }
  }
  if (out.pass) out.notes << "200 graphs";
}

void polynomial_consistency(Outcome& out) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const Multigraph g = gen::random_multigraph(seed);
    const FlowPolynomial p = flow_polynomial(g);
    for (int k = 2; k <= 6; ++k) {
      if (p.evaluate(k) != count_nz_flows(g, Group::cyclic(k))) {
        out.fail("seed " + std::to_string(seed) + " k=" + std::to_string(k));
      }
    }
  }
  if (out.pass) out.notes << "200 graphs, k = 2..6";
}

void z6_generator(Outcome& out) {
  constexpr long long kCap = 100000;
  int graphs = 0;
  for (const auto& [name, g] : gen::corpus()) {
    if (g.num_vertices() > 10 || !is_k_edge_connected(g, 3)) continue;
    ++graphs;
    FlowCheck check{g};
    z6_flow_family(g, kCap, std::ref(check));
    const BigInt bound = guaranteed_bound(BoundVariant::kZ6ThreeEdgeConnected, g.num_vertices());
    const BigInt census = count_nz_flows(g, Group::z2xz3());
    if (!check.clean()) out.fail(name + ": invalid or repeated flow");
    if (BigInt(check.distinct()) < bound) out.fail(name + ": below 2^(n/7)");
    if (BigInt(check.distinct()) > census) out.fail(name + ": above census");

    const ChainCover cover = build_anchored_chain_cover(g);
    FlowCheck branch{g};
    generate_from_cover(g, cover, kCap, std::ref(branch));
    if (!branch.clean()) out.fail(name + ": cover branch invalid or repeated");
    if (branch.emitted < kCap && BigInt(branch.distinct()) < cover_count_bound(cover)) {
      out.fail(name + ": cover branch below 2^|X| 3^(p+|A'|/2)");
    }
  }
  if (out.pass) out.notes << graphs << " graphs";
}

void cubic_identities(Outcome& out) {
  int graphs = 0;
  for (const auto& [name, g] : gen::corpus()) {
    bool cubic = g.num_vertices() >= 4;
    for (Vertex v = 0; v < g.num_vertices(); ++v) cubic = cubic && g.degree(v) == 3;
    if (!cubic || !is_k_edge_connected(g, 3)) continue;
    ++graphs;
    const ChainCover cover = build_anchored_chain_cover(g);
    const CubicAnalysis a = analyse_cubic(g, cover);
    const int n = g.num_vertices();
    if (static_cast<int>(a.K.size()) != n + cover.p - cover.k()) out.fail(name + ": |K| != n+p-k");
    if (2 * a.q != n + 2 * (cover.p - cover.k())) out.fail(name + ": q != n/2+p-k");
    FlowCheck check{g};
    toggled_flows(g, a, LLONG_MAX, std::ref(check));
    const long long expected = 1LL << (a.W.size() - a.W_prime.size());
    if (!check.clean() || check.distinct() != expected) {
      out.fail(name + ": toggles emitted " + std::to_string(check.distinct()) + ", expected " + std::to_string(expected));
    }
  }
  if (out.pass) out.notes << graphs << " cubic graphs";
}

void z4_constructions(Outcome& out) {
  std::vector<gen::Named> graphs = {
      {"K4", complete_graph(4)},          {"K5", complete_graph(5)},
      {"doubled P3", gen::doubled_path(3)}, {"doubled P5", gen::doubled_path(5)},
      {"doubled star 3", gen::doubled_star(3)},
  };
  for (int n = 3; n <= 6; ++n) graphs.push_back({"doubled C" + std::to_string(n), cycle_with_doubled_edges(n, n)});
  for (const auto& [name, g] : graphs) {
    const auto pair = pack_two_spanning_trees(g);
    if (!pair) {
      out.fail(name + ": no tree pair");
      continue;
    }
    const int n = g.num_vertices();
    const int m = g.num_edges();
    FlowCheck dense{g};
    z4_family_dense(g, *pair, LLONG_MAX, std::ref(dense));
    if (!dense.clean() || BigInt(dense.distinct()) != pow_big(3, m - 2 * n + 2)) out.fail(name + ": dense count");

    FlowCheck tree{g};
    const int q = flows_from_tree_pair(g, *pair, LLONG_MAX, std::ref(tree));
    if (q != canonical_z2_flow(g, pair->t1).q()) out.fail(name + ": q mismatch");
    if (!tree.clean() || tree.distinct() != (1LL << q)) out.fail(name + ": 2^q count");

    const FlipAnalysis fa = analyse_flips(g, *pair);
    const long long n1 = static_cast<long long>(fa.L1.size());
    const long long n2 = static_cast<long long>(fa.L2.size());
    const BigInt want = ceil_power(2, Rational{std::max(2 * (n - n1 - n2), n1 + n2), 8});
    std::set<TreePair> pairs;
    long long bad = 0;
    tree_pair_family(g, *pair, LLONG_MAX, [&](const TreePair& p) {
      if (!is_valid_tree_pair(g, p)) ++bad;
      pairs.insert(p);
      return true;
    });
    if (bad > 0 || BigInt(static_cast<long long>(pairs.size())) < want) out.fail(name + ": tree-pair family");
  }
  if (out.pass) out.notes << graphs.size() << " graphs";
}

void z3_on(Outcome& out, const std::string& name, const Multigraph& g) {
  const Boundary zero = Boundary::zero(g.num_vertices());
  std::unordered_set<std::string> seen;
  long long bad = 0;
  long long emitted = 0;
  z3_flow_family(g, LLONG_MAX, [&](const Orientation& o) {
    ++emitted;
    if (!verify_beta_flow(g, o, zero)) ++bad;
    seen.insert(std::string(o.begin(), o.end()));
    return true;
  });
  const BigInt bound = guaranteed_bound(BoundVariant::kZ3, g.num_vertices());
  const BigInt census = count_nz_flows(g, Group::cyclic(3));
  const auto distinct = static_cast<long long>(seen.size());
  if (bad > 0 || distinct != emitted) out.fail(name + ": invalid or repeated orientation");
  if (BigInt(distinct) < bound) out.fail(name + ": below bound");
  if (BigInt(distinct) > census) out.fail(name + ": above census");
  if (out.pass) out.notes << name << " " << distinct << "/" << census << " ";
}

void z3_pipeline(Outcome& out) {
  z3_on(out, "tripled triangle", multiplied(complete_graph(3), 3));
  z3_on(out, "doubled K4", multiplied(complete_graph(4), 2));
  for (int n = 4; n <= 6; ++n) {
    const FamilyGraph r = make_family(FamilySpec{"random_k_ec", {n, 6, 2024}});
    z3_on(out, "random_k_ec(" + std::to_string(n) + ",6)", r.graph);
  }
}

void splitting(Outcome& out) {
  std::vector<gen::Named> graphs;
  for (auto& named : gen::corpus()) {
    if (named.graph.num_vertices() <= 8) graphs.push_back(std::move(named));
  }
  gen::Rng rng(8);
  for (int i = 0; i < 30; ++i) {
    const int n = 3 + rng.below(6);
    graphs.push_back({"random " + std::to_string(i), gen::random_loopless(n, n + rng.below(2 * n), rng)});
  }
  int vertices = 0;
  int preserving = 0;
  for (const auto& [name, g] : graphs) {
    const int n = g.num_vertices();
    const auto cut_edges = bridges(g);
    for (Vertex v = 0; v < n; ++v) {
      const int d = g.degree(v);
      bool on_bridge = false;
      for (EdgeId id : cut_edges) on_bridge = on_bridge || g.edge(id).tail == v || g.edge(id).head == v;
      if (d < 2 || d == 3 || on_bridge || n < 3) continue;
      ++vertices;
      const auto [e1, e2] = find_splittable_pair(g, v);
      const Surgery s = lift_pair(g, v, e1, e2);
      for (Vertex a = 0; a < n; ++a) {
        for (Vertex b = a + 1; b < n; ++b) {
          if (a == v || b == v) continue;
          const int before = oracle::brute_local_connectivity(g, a, b);
          const int after = oracle::brute_local_connectivity(s.graph, s.step.vertex_map[a], s.step.vertex_map[b]);
          if (before != after) out.fail(name + ": lambda changed at v=" + std::to_string(v));
        }
      }
    }
    const int k = oracle::brute_edge_connectivity(g);
    if (k < 2) continue;
    for (Vertex v = 0; v < n; ++v) {
      if (g.degree(v) < k + 2) continue;
      ++preserving;
      const auto [e1, e2] = find_splittable_pair_preserving_k(g, v, k);
      const Surgery s = lift_pair(g, v, e1, e2);
      if (s.graph.num_vertices() >= 2 && oracle::brute_edge_connectivity(s.graph) < k) {
        out.fail(name + ": lift lost " + std::to_string(k) + "-edge-connectivity");
      }
    }
  }
  if (out.pass) out.notes << vertices << " vertices, " << preserving << " k-preserving lifts";
}

Multigraph k8_minus_matching() {
  Multigraph g(8);
  for (int i = 0; i < 8; ++i) {
    for (int j = i + 1; j < 8; ++j) {
      if (!(j == i + 1 && i % 2 == 0)) g.add_edge(i, j);
    }
  }
  return g;
}

void cai(Outcome& out) {
  const std::vector<gen::Named> graphs = {
      {"K7", complete_graph(7)},
      {"K8", complete_graph(8)},
      {"K8 minus matching", k8_minus_matching()},
      {"K66", complete_bipartite_graph(6, 6)},
      {"doubled K4", multiplied(complete_graph(4), 2)},
  };
  int checked = 0;
  for (const auto& [name, g] : graphs) {
    for (Vertex v = 0; v < g.num_vertices(); ++v) {
      const CliqueRemoval r = clique_removal(g, v);
      const CaiCheck c = cai_check(r.reduced);
      if (!c.simple || !is_minimally_k_edge_connected(r.reduced, 6)) continue;
      ++checked;
      if (!c.holds()) out.fail(name + " at " + std::to_string(v) + ": " + std::to_string(c.degree6) + " degree-6 vertices");
    }
  }
  if (checked == 0) out.fail("no graph qualified");
  if (out.pass) out.notes << checked << " expanded graphs";
}

void negative_controls(Outcome& out) {
  const Multigraph petersen = petersen_graph();
  if (count_nz_flows(petersen, Group::z2xz2()) != 0) out.fail("Petersen Z2xZ2 count nonzero");
  if (enumerate_nz_flows(petersen, Group::z2xz2(), LLONG_MAX, [](const Flow&) { return true; }) != 0) {
    out.fail("Petersen Z2xZ2 stream nonempty");
  }
  bool threw = false;
  try {
    z4_flow_family(petersen, 10, [](const Flow&) { return true; });
  } catch (const PreconditionError&) {
    threw = true;
  }
  if (!threw) out.fail("z4_flow_family accepted Petersen");
  if (count_nz_flows(complete_graph(4), Group::cyclic(3)) != 0) out.fail("K4 Z3 count nonzero");
  const Multigraph c4 = cycle_graph(4);
  if (check_extend_hypotheses(c4, Boundary::zero(4), 0).condition1) out.fail("C4 passed condition 1");
}

}  // namespace

int main(int argc, char** argv) {
  const bool long_tier = argc > 1 && std::strcmp(argv[1], "--long") == 0;
  if (long_tier) {
    criterion(7, "Z3 pipeline on K7 (long tier)", 1800, [](Outcome& o) { z3_on(o, "K7", complete_graph(7)); });
    return failures == 0 ? 0 : 1;
  }
  criterion(1, "cycles with doubled edges count 5*4^d under Z2xZ3", 10, extremal_family);
  criterion(2, "Z4 = Z2xZ2 and Z6 = Z2xZ3 counts on random multigraphs", 60, group_invariance);
  criterion(3, "flow polynomial matches Zk counts for k = 2..6", 60, polynomial_consistency);
  criterion(4, "Z6 generator: valid, distinct, >= 2^(n/7), <= census; cover branch bound", 300, z6_generator);
  criterion(5, "cubic identities and exact toggle count", 60, cubic_identities);
  criterion(6, "Z4 dense family, 2^q tree-pair flows, tree-pair family bound", 120, z4_constructions);
  criterion(7, "Z3 pipeline: valid, distinct, >= bound, <= census", 300, z3_pipeline);
  criterion(8, "splittable pairs preserve local and global connectivity", 300, splitting);
  criterion(9, "degree-6 count bound on minimally 6-edge-connected expansions", 300, cai);
  criterion(10, "negative controls", 60, negative_controls);
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
  return failures == 0 ? 0 : 1;
}
