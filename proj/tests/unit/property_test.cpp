#include <gtest/gtest.h>

#include <set>

#include "generators.hpp"
#include "nzflow/boundary.hpp"
#include "nzflow/census.hpp"
#include "nzflow/connectivity.hpp"
#include "nzflow/graph_io.hpp"
#include "nzflow/surgery.hpp"
#include "nzflow/z6_flows.hpp"
#include "oracle.hpp"

using namespace nzflow;

namespace {

constexpr int kTrials = 150;

}  // namespace

TEST(Property, CountDependsOnlyOnGroupOrder) {
  for (int seed = 0; seed < kTrials; ++seed) {
    const Multigraph g = gen::random_multigraph(seed);
    EXPECT_EQ(count_nz_flows(g, Group::cyclic(4)), count_nz_flows(g, Group::z2xz2())) << seed;
    EXPECT_EQ(count_nz_flows(g, Group::cyclic(6)), count_nz_flows(g, Group::z2xz3())) << seed;
  }
}

TEST(Property, CensusMatchesSubsetExpansion) {
  for (int seed = 0; seed < kTrials; ++seed) {
    const Multigraph g = gen::random_multigraph(1000 + seed);
    for (int k = 2; k <= 6; ++k) {
      EXPECT_EQ(count_nz_flows(g, Group::cyclic(k)), oracle::subset_flow_count(g, k)) << seed << " k=" << k;
    }
    auto expected = oracle::subset_flow_polynomial(g);
    while (!expected.empty() && expected.back() == 0) expected.pop_back();
    EXPECT_EQ(flow_polynomial(g).coefficients, expected) << seed;
  }
}

TEST(Property, Z3OrientationsMatchTheCensus) {
  for (int seed = 0; seed < kTrials; ++seed) {
    const Multigraph g = gen::random_multigraph(2000 + seed);
    EXPECT_EQ(count_nz_flows(g, Group::cyclic(3)), oracle::brute_z3_orientations(g)) << seed;
  }
}

TEST(Property, ConnectivityMatchesBruteForce) {
  for (int seed = 0; seed < kTrials; ++seed) {
    const Multigraph g = gen::random_multigraph(3000 + seed);
    if (g.num_vertices() < 2) continue;
    const GlobalCut cut = edge_connectivity(g);
    EXPECT_EQ(cut.value, oracle::brute_edge_connectivity(g)) << seed;
    EXPECT_EQ(g.cut_size(cut.certificate.mask(g.num_vertices())), cut.value) << seed;
    EXPECT_EQ(local_edge_connectivity(g, 0, g.num_vertices() - 1),
              oracle::brute_local_connectivity(g, 0, g.num_vertices() - 1))
        << seed;
  }
}

TEST(Property, SplittablePairsKeepLocalConnectivity) {
  gen::Rng rng(4);
  int lifts = 0;
  for (int trial = 0; trial < kTrials; ++trial) {
    const int n = 4 + rng.below(3);
    const Multigraph g = gen::random_loopless(n, 2 * n + rng.below(2 * n), rng);
    for (Vertex v = 0; v < n; ++v) {
      if (g.degree(v) < 4 || g.degree(v) % 2 != 0 || !bridges(g).empty()) continue;
      const auto [e1, e2] = find_splittable_pair(g, v);
      const Multigraph h = lift_pair(g, v, e1, e2).graph;
      const auto map = lift_pair(g, v, e1, e2).step.vertex_map;
      for (Vertex s = 0; s < n; ++s) {
        for (Vertex t = s + 1; t < n; ++t) {
          if (s == v || t == v || map[s] < 0 || map[t] < 0) continue;
          EXPECT_EQ(local_edge_connectivity(h, map[s], map[t]), local_edge_connectivity(g, s, t));
        }
      }
      ++lifts;
    }
  }
  EXPECT_GT(lifts, 0);
}

TEST(Property, SerializationRoundTrips) {
  for (int seed = 0; seed < kTrials; ++seed) {
    const Multigraph g = gen::random_multigraph(4000 + seed);
    EXPECT_EQ(parse_graph(serialize_graph(g)), g) << seed;
  }
}

TEST(Property, Z6FamilyIsValidAndWithinCensus) {
  int checked = 0;
  for (int seed = 0; seed < kTrials; ++seed) {
    const Multigraph g = gen::random_multigraph(5000 + seed);
    if (g.num_vertices() < 2 || !is_k_edge_connected(g, 2)) continue;
    std::set<std::string> seen;
    bool clean = true;
    z6_flow_family(g, 100000, [&](const Flow& f) {
      clean = clean && validate_flow(g, f) && is_nowhere_zero(f);
      seen.insert(f.serialize());
      return true;
    });
    EXPECT_TRUE(clean) << seed;
    EXPECT_LE(BigInt(seen.size()), count_nz_flows(g, Group::z2xz3())) << seed;
    EXPECT_GE(BigInt(seen.size()),
              guaranteed_bound(BoundVariant::kZ6TwoEdgeConnected, g.num_vertices(), g.num_edges()))
        << seed;
    ++checked;
  }
  EXPECT_GT(checked, 10);
}

TEST(Property, EnumerationMatchesCount) {
  for (int seed = 0; seed < 60; ++seed) {
    const Multigraph g = gen::random_multigraph(6000 + seed);
    for (const Group& grp : {Group::cyclic(3), Group::z2xz2()}) {
      std::set<std::string> seen;
      enumerate_nz_flows(g, grp, 1 << 20, [&](const Flow& f) {
        EXPECT_TRUE(validate_flow(g, f) && is_nowhere_zero(f));
        seen.insert(f.serialize());
        return true;
      });
      EXPECT_EQ(BigInt(seen.size()), count_nz_flows(g, grp)) << seed;
    }
  }
}
