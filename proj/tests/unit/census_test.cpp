#include <gtest/gtest.h>

#include <set>

#include "generators.hpp"
#include "nzflow/census.hpp"
#include "nzflow/errors.hpp"
#include "nzflow/families.hpp"
#include "oracle.hpp"

using namespace nzflow;

namespace {

std::vector<BigInt> coeffs(std::initializer_list<long long> xs) {
  std::vector<BigInt> out;
  for (long long x : xs) out.emplace_back(x);
  return out;
}

}  // namespace

// Values below were produced by the subset-expansion oracle and frozen.
TEST(Census, FrozenCounts) {
  EXPECT_EQ(count_nz_flows(complete_graph(4), Group::cyclic(3)), 0);
  EXPECT_EQ(count_nz_flows(complete_graph(4), Group::z2xz2()), 6);
  EXPECT_EQ(count_nz_flows(complete_graph(4), Group::z2xz3()), 60);
  EXPECT_EQ(count_nz_flows(petersen_graph(), Group::z2xz2()), 0);
  EXPECT_EQ(count_nz_flows(petersen_graph(), Group::cyclic(5)), 240);
  EXPECT_EQ(count_nz_flows(petersen_graph(), Group::z2xz3()), 1920);
  EXPECT_EQ(count_nz_flows(complete_graph(5), Group::cyclic(3)), 24);
  EXPECT_EQ(count_nz_flows(complete_graph(5), Group::cyclic(4)), 279);
  EXPECT_EQ(count_nz_flows(complete_graph(5), Group::z2xz3()), 7845);
  EXPECT_EQ(count_nz_flows(complete_bipartite_graph(3, 3), Group::cyclic(3)), 2);
  EXPECT_EQ(count_nz_flows(gen::cube(), Group::z2xz3()), 680);
  EXPECT_EQ(count_nz_flows(multiplied(cycle_graph(3), 3), Group::cyclic(3)), 62);
  EXPECT_EQ(count_nz_flows(multiplied(complete_graph(4), 2), Group::cyclic(3)), 176);
  EXPECT_EQ(count_nz_flows(multiplied(complete_graph(4), 2), Group::z2xz3()), 1131785);
  EXPECT_EQ(count_nz_flows(complete_graph(7), Group::cyclic(3)), 3648);
}

TEST(Census, LoopsAndBridges) {
  Multigraph g(2);
  g.add_edge(0, 1);
  EXPECT_EQ(count_nz_flows(g, Group::cyclic(5)), 0);
  Multigraph loop(1);
  loop.add_edge(0, 0);
  loop.add_edge(0, 0);
  EXPECT_EQ(count_nz_flows(loop, Group::cyclic(4)), 9);
  EXPECT_EQ(count_nz_flows(Multigraph(3), Group::cyclic(4)), 1);
}

TEST(Census, CapIsEnforced) {
  CensusLimits tight;
  tight.max_cycle_rank_order6 = 2;
  EXPECT_THROW(count_nz_flows(complete_graph(4), Group::z2xz3(), tight), CapExceeded);
  EXPECT_EQ(cycle_rank(complete_graph(4)), 3);
}

TEST(Census, EnumerationIsDistinctValidAndComplete) {
  const Multigraph g = gen::prism();
  std::set<std::string> seen;
  const long long n = enumerate_nz_flows(g, Group::z2xz3(), 1'000'000, [&](const Flow& f) {
    EXPECT_TRUE(validate_flow(g, f));
    EXPECT_TRUE(is_nowhere_zero(f));
    seen.insert(f.serialize());
    return true;
  });
  EXPECT_EQ(n, 180);
  EXPECT_EQ(seen.size(), 180U);
}

TEST(Census, EnumerationStopsAtTheLimit) {
  EXPECT_EQ(collect_nz_flows(complete_graph(5), Group::cyclic(3), 5).size(), 5U);
}

TEST(Census, ThreadsAgree) {
  CensusLimits par;
  par.threads = 4;
  EXPECT_EQ(count_nz_flows(complete_graph(5), Group::z2xz3(), par), 7845);
}

TEST(Polynomial, FrozenCoefficients) {
  EXPECT_EQ(flow_polynomial(complete_graph(4)).coefficients, coeffs({-6, 11, -6, 1}));
  EXPECT_EQ(flow_polynomial(petersen_graph()).coefficients, coeffs({240, -620, 624, -325, 95, -15, 1}));
  EXPECT_EQ(flow_polynomial(cycle_graph(3)).str(), "k - 1");
}

TEST(Polynomial, AgreesWithTheSubsetOracle) {
  for (const auto& [name, g] : gen::corpus()) {
    if (g.num_edges() > 18) continue;
    const FlowPolynomial p = flow_polynomial(g);
    EXPECT_EQ(p.coefficients, oracle::subset_flow_polynomial(g)) << name;
    for (long long k = 2; k <= 6; ++k) EXPECT_EQ(p.evaluate(k), oracle::subset_flow_count(g, k)) << name;
  }
}

TEST(Polynomial, BridgeGivesZero) {
  Multigraph g(2);
  g.add_edge(0, 1);
  EXPECT_TRUE(flow_polynomial(g).is_zero());
}
