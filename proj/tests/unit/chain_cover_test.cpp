#include <gtest/gtest.h>

#include <climits>
#include <set>

#include "generators.hpp"
#include "nzflow/chain_cover.hpp"
#include "nzflow/connectivity.hpp"
#include "nzflow/families.hpp"

using namespace nzflow;

namespace {

std::vector<gen::Named> three_connected() {
  std::vector<gen::Named> out;
  for (auto& item : gen::corpus()) {
    if (item.graph.num_vertices() >= 2 && is_k_edge_connected(item.graph, 3)) out.push_back(item);
  }
  return out;
}

bool is_cubic(const Multigraph& g) {
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    if (g.degree(v) != 3) return false;
  }
  return g.num_vertices() >= 4;
}

}  // namespace

TEST(ChainCover, ValidOnTheCorpus) {
  for (const auto& [name, g] : three_connected()) {
    const ChainCover c = build_anchored_chain_cover(g);
    EXPECT_FALSE(cover_violation(g, c).has_value()) << name << ": " << cover_violation(g, c).value_or("");
    EXPECT_EQ(c.chains.front().kind, ChainKind::kCycle) << name;
    // every edge is a chain edge, an anchor or external
    const int anchors = static_cast<int>(c.anchors().size());
    EXPECT_EQ(static_cast<int>(c.chain_edges().size()) + anchors + static_cast<int>(c.external.size()),
              g.num_edges())
        << name;
  }
}

TEST(ChainCover, RejectsTwoEdgeCuts) {
  try {
    build_anchored_chain_cover(cycle_graph(5));
    FAIL();
  } catch (const ConnectivityError& e) {
    EXPECT_LE(e.certificate().size(), 2);
  }
  EXPECT_THROW(build_anchored_chain_cover(Multigraph(1)), PreconditionError);
}

TEST(ChainCover, EvenAnchorSubsetLeavesAForest) {
  const Multigraph g = complete_graph(6);
  const ChainCover c = build_anchored_chain_cover(g);
  const auto anchors = c.anchors();
  const auto even = compute_even_anchor_subset(g, anchors);
  std::vector<int> deg(static_cast<std::size_t>(g.num_vertices()), 0);
  for (EdgeId id : even) {
    ++deg[g.edge(id).tail];
    ++deg[g.edge(id).head];
  }
  for (int d : deg) EXPECT_EQ(d % 2, 0);
}

TEST(ChainCover, GenerationMeetsItsCertificate) {
  for (const auto& [name, g] : three_connected()) {
    const ChainCover c = build_anchored_chain_cover(g);
    std::set<std::string> seen;
    const CoverGeneration gen = generate_from_cover(g, c, 200000, [&](const Flow& f) {
      EXPECT_TRUE(validate_flow(g, f)) << name;
      EXPECT_TRUE(is_nowhere_zero(f)) << name;
      seen.insert(f.serialize());
      return true;
    });
    EXPECT_EQ(static_cast<long long>(seen.size()), gen.emitted) << name;
    if (gen.certified <= 200000) EXPECT_GE(BigInt(gen.emitted), gen.certified) << name;
    EXPECT_GE(gen.certified, cover_count_bound(c)) << name;
    EXPECT_EQ(certified_cover_count(g, c), gen.certified) << name;
  }
}

TEST(ChainCover, SpecialFlowIsSparseOnChains) {
  for (const auto& [name, g] : three_connected()) {
    const ChainCover c = build_anchored_chain_cover(g);
    const Flow f = special_sparse_zero_flow(g, c);
    ASSERT_TRUE(validate_flow(g, f)) << name;
    ASSERT_TRUE(is_nowhere_zero(f)) << name;
    const auto chain = c.chain_edges();
    int zeros = 0;
    for (EdgeId id : g.edge_ids()) {
      if (f.at(id).residues[1] != 0) continue;
      EXPECT_TRUE(std::binary_search(chain.begin(), chain.end(), id)) << name;
      ++zeros;
    }
    EXPECT_LE(3 * zeros, static_cast<int>(chain.size())) << name;
  }
}

TEST(Cubic, IdentitiesAndToggles) {
  for (const auto& [name, g] : three_connected()) {
    if (!is_cubic(g)) continue;
    const ChainCover c = build_anchored_chain_cover(g);
    const CubicAnalysis a = analyse_cubic(g, c);
    const int n = g.num_vertices();
    EXPECT_EQ(static_cast<int>(a.K.size()), n + c.p - c.k()) << name;
    EXPECT_EQ(static_cast<int>(a.J.size()), c.k() - c.p) << name;
    EXPECT_EQ(2 * a.q, n + 2 * (c.p - c.k())) << name;
    EXPECT_LE(static_cast<int>(a.W_prime.size()), a.q - 1) << name;
    std::set<std::string> seen;
    toggled_flows(g, a, LLONG_MAX, [&](const Flow& f) {
      EXPECT_TRUE(validate_flow(g, f) && is_nowhere_zero(f)) << name;
      seen.insert(f.serialize());
      return true;
    });
    EXPECT_EQ(seen.size(), std::size_t{1} << (a.W.size() - a.W_prime.size())) << name;
  }
}

TEST(Cubic, FamilyDeduplicates) {
  const Multigraph g = petersen_graph();
  std::set<std::string> seen;
  const CubicFamilyStats s = cubic_flow_family(g, 100000, [&](const Flow& f) {
    seen.insert(f.serialize());
    return true;
  });
  EXPECT_EQ(static_cast<long long>(seen.size()), s.emitted);
  EXPECT_LE(s.emitted, 1920);
  EXPECT_GE(BigInt(s.emitted), s.cover_certified);
  EXPECT_THROW(analyse_cubic(complete_graph(5), build_anchored_chain_cover(complete_graph(5))), PreconditionError);
}
