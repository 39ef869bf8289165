#include <gtest/gtest.h>

#include "nzflow/census.hpp"
#include "nzflow/connectivity.hpp"
#include "nzflow/families.hpp"
#include "nzflow/surgery.hpp"

using namespace nzflow;

namespace {

Multigraph triangle_with_pendant_loop() {
  Multigraph g(3);
  g.add_edge(0, 1);
  g.add_edge(1, 2);
  g.add_edge(2, 0);
  g.add_edge(1, 1);
  return g;
}

}  // namespace

TEST(Lift, NewEdgeJoinsTheFarEnds) {
  const Multigraph g = complete_graph(4);
  const Surgery s = lift_pair(g, 0, 0, 1);
  const auto& op = std::get<LiftPair>(s.step.op);
  EXPECT_EQ(op.new_edge, g.next_edge_id());
  const Edge& e = s.graph.edge(op.new_edge);
  EXPECT_EQ(e.tail, s.step.vertex_map[1]);
  EXPECT_EQ(e.head, s.step.vertex_map[2]);
  EXPECT_EQ(s.graph.num_edges(), 5);
  EXPECT_THROW(lift_pair(g, 0, 0, 0), PreconditionError);
  EXPECT_THROW(lift_pair(g, 0, 0, 5), PreconditionError);
}

TEST(Lift, IsolatedVertexDisappears) {
  Multigraph g(3);
  g.add_edge(0, 1);
  g.add_edge(0, 2);
  const Surgery s = lift_pair(g, 0, 0, 1);
  EXPECT_EQ(s.graph.num_vertices(), 2);
  EXPECT_EQ(s.step.vertex_map[0], -1);
}

TEST(Suppress, NeedsDegreeTwo) {
  const Multigraph c = cycle_graph(4);
  const Surgery s = suppress_vertex(c, 2);
  EXPECT_EQ(s.graph.num_vertices(), 3);
  EXPECT_THROW(suppress_vertex(complete_graph(4), 0), PreconditionError);
}

TEST(Contract, ParallelEdgesBecomeLoops) {
  const Multigraph g = cycle_with_doubled_edges(3, 1);
  const Surgery s = contract_edge(g, 0);
  EXPECT_EQ(s.graph.num_vertices(), 2);
  int loops = 0;
  for (const Edge& e : s.graph.edges()) loops += e.is_loop();
  EXPECT_EQ(loops, 1);
}

TEST(Trace, ReplayReproducesTheFinalGraph) {
  ReductionTrace trace(complete_graph(5));
  trace.append(lift_pair(trace.final_graph(), 0, 0, 1));
  trace.append(contract_edge(trace.final_graph(), 5));
  trace.append(delete_edge(trace.final_graph(), trace.final_graph().edges().back().id));
  EXPECT_EQ(trace.replay(), trace.final_graph());
  EXPECT_THROW(trace.append(lift_pair(complete_graph(4), 0, 0, 1)), InvariantViolation);
}

TEST(PullBack, LiftsAndContractionsKeepFlowsValid) {
  const Multigraph g = multiplied(complete_graph(4), 2);
  ReductionTrace trace(g);
  trace.append(lift_pair(trace.final_graph(), 0, 0, 2));
  trace.append(contract_edge(trace.final_graph(), 4));
  const Group grp = Group::z2xz3();
  const auto flows = collect_nz_flows(trace.final_graph(), grp, 50);
  ASSERT_FALSE(flows.empty());
  for (const Flow& f : flows) {
    const Flow back = pull_back_flow(f, trace);
    EXPECT_TRUE(validate_flow(g, back));
  }
}

TEST(PullBack, DeletedLoopsTakeTheirGivenValue) {
  const Multigraph g = triangle_with_pendant_loop();
  ReductionTrace trace(g);
  trace.append(delete_edge(g, 3));
  const Group z3 = Group::cyclic(3);
  Flow f(z3, trace.final_graph());
  for (EdgeId id : trace.final_graph().edge_ids()) f.set(id, z3.make(2));
  LoopValues loops{{3, z3.make(1)}};
  const Flow back = pull_back_flow(f, trace, &loops);
  EXPECT_EQ(back.at(3), z3.make(1));
  EXPECT_TRUE(validate_flow(g, back));
  EXPECT_THROW(pull_back_flow(f, trace), PreconditionError);
}

TEST(CliqueExpansion, DegreeAndShape) {
  const Multigraph g = complete_graph(5);
  const Surgery s = clique_expansion(g, 0);
  const auto& op = std::get<CliqueExpand>(s.step.op);
  EXPECT_EQ(op.new_vertices.size(), 4U);
  EXPECT_EQ(op.clique_edges.size(), 6U);
  EXPECT_EQ(s.graph.num_vertices(), 8);
  for (Vertex x : op.new_vertices) EXPECT_EQ(s.graph.degree(x), 4);
}

TEST(MaxDegree, SplitsKeepConnectivity) {
  const Multigraph g = complete_graph(9);
  const auto [h, trace] = suppress_or_split_to_max_degree(g, 6, 7);
  EXPECT_LE(h.max_degree(), 7);
  EXPECT_TRUE(is_k_edge_connected(h, 6));
  EXPECT_EQ(trace.replay(), h);
  EXPECT_THROW(suppress_or_split_to_max_degree(cycle_graph(4), 3, 3), PreconditionError);
}

TEST(ContractSet, MergedVertexIsLast) {
  const Multigraph g = complete_graph(5);
  const Contraction c = contract_vertex_set(g, {true, true, false, false, false});
  EXPECT_EQ(c.graph.num_vertices(), 4);
  EXPECT_EQ(c.merged, 3);
  EXPECT_EQ(c.dropped_loops, std::vector<EdgeId>{0});
  EXPECT_EQ(c.graph.degree(c.merged), 6);
}
