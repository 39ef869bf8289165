#include <gtest/gtest.h>

#include <set>

#include "generators.hpp"
#include "nzflow/census.hpp"
#include "nzflow/connectivity.hpp"
#include "nzflow/families.hpp"
#include "nzflow/z6_flows.hpp"

using namespace nzflow;

namespace {

struct Collected {
  std::set<std::string> flows;
  bool clean = true;
};

Collected run(const Multigraph& g, long long limit, Z6FamilyStats* stats = nullptr) {
  Collected c;
  const Z6FamilyStats s = z6_flow_family(g, limit, [&](const Flow& f) {
    c.clean = c.clean && validate_flow(g, f) && is_nowhere_zero(f) && f.group() == Group::z2xz3();
    c.flows.insert(f.serialize());
    return true;
  });
  EXPECT_EQ(static_cast<long long>(c.flows.size()), s.emitted);
  if (stats) *stats = s;
  return c;
}

}  // namespace

TEST(Z6, TwoCutContractionReachesThreeConnectivity) {
  const auto [h, trace] = contract_two_cuts(cycle_with_doubled_edges(6, 3));
  EXPECT_TRUE(h.num_vertices() <= 1 || is_k_edge_connected(h, 3));
  EXPECT_EQ(trace.replay(), h);
}

TEST(Z6, CubicReduction) {
  EXPECT_FALSE(reduce_to_cubic(complete_graph(5)).has_value());  // every vertex is suppressed
  Multigraph g = complete_graph(4);
  g.add_edge(0, 1);
  const auto r = reduce_to_cubic(g);
  ASSERT_TRUE(r.has_value());
  for (Vertex v = 0; v < r->cubic.num_vertices(); ++v) EXPECT_EQ(r->cubic.degree(v), 3);
  EXPECT_TRUE(is_k_edge_connected(r->cubic, 3));
}

TEST(Z6, CorpusFamiliesAreValidDistinctAndBounded) {
  for (const auto& [name, g] : gen::corpus()) {
    if (!is_k_edge_connected(g, 2) || g.num_vertices() < 2) continue;
    Z6FamilyStats s;
    const Collected c = run(g, 100000, &s);
    EXPECT_TRUE(c.clean) << name;
    const bool three = is_k_edge_connected(g, 3);
    const BigInt bound = three ? guaranteed_bound(BoundVariant::kZ6ThreeEdgeConnected, g.num_vertices())
                               : guaranteed_bound(BoundVariant::kZ6TwoEdgeConnected, g.num_vertices(),
                                                  g.num_edges());
    EXPECT_GE(BigInt(c.flows.size()), bound) << name;
    if (cycle_rank(g) <= 12) EXPECT_LE(BigInt(c.flows.size()), count_nz_flows(g, Group::z2xz3())) << name;
  }
}

TEST(Z6, CycleCountIsFive) {
  EXPECT_EQ(run(cycle_graph(7), 100).flows.size(), 5U);
}

TEST(Z6, CycleWithOneDoubledEdge) {
  const Multigraph g = cycle_with_doubled_edges(5, 1);
  const auto n = run(g, 100).flows.size();
  EXPECT_LE(BigInt(n), count_nz_flows(g, Group::z2xz3()));
  EXPECT_EQ(count_nz_flows(g, Group::z2xz3()), 20);
  EXPECT_GE(BigInt(n), guaranteed_bound(BoundVariant::kZ6TwoEdgeConnected, 5, 6));
}

TEST(Z6, RejectsBridges) {
  Multigraph g(3);
  g.add_edge(0, 1);
  g.add_edge(1, 2);
  g.add_edge(2, 1);
  EXPECT_THROW(run(g, 10), ConnectivityError);
}

TEST(Z6, LimitIsRespected) {
  EXPECT_EQ(run(multiplied(complete_graph(4), 2), 37).flows.size(), 37U);
}
