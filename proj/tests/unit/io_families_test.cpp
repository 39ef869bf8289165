#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "nzflow/connectivity.hpp"
#include "nzflow/families.hpp"
#include "nzflow/graph_io.hpp"
#include "nzflow/report.hpp"

using namespace nzflow;

TEST(GraphIo, ParsesCommentsAndBlankLines) {
  const Multigraph g = parse_graph("# triangle\n3 3\n0 1\n\n1 2  # middle\n2 0\n");
  EXPECT_EQ(g.num_vertices(), 3);
  EXPECT_EQ(g.num_edges(), 3);
  EXPECT_EQ(g.edge(2).tail, 2);
}

TEST(GraphIo, RoundTrip) {
  const Multigraph g = multiplied(complete_graph(4), 2);
  EXPECT_EQ(parse_graph(serialize_graph(g)), g);
  EXPECT_EQ(graph_digest(g), graph_digest(parse_graph(serialize_graph(g))));
  EXPECT_EQ(graph_digest(g).size(), 16U);
  EXPECT_NE(graph_digest(g), graph_digest(complete_graph(4)));
}

TEST(GraphIo, ErrorsCarryLineNumbers) {
  const auto line_of = [](const char* text) {
    try {
      parse_graph(text);
    } catch (const ParseError& e) {
      return e.line();
    }
    return -1;
  };
  EXPECT_EQ(line_of("2 1\n0 2\n"), 2);
  EXPECT_EQ(line_of("2 1\n0 -1\n"), 2);
  EXPECT_EQ(line_of("2 2\n0 1\n"), 0);
  EXPECT_EQ(line_of("2 1\n0 1\n1 0\n"), 3);
  EXPECT_EQ(line_of("x y\n"), 1);
  EXPECT_EQ(line_of(""), 0);
}

TEST(GraphIo, MissingFile) {
  EXPECT_THROW(read_graph_file("/nonexistent/graph.txt"), ParseError);
  const auto path = std::filesystem::temp_directory_path() / "nzflow_io_test.txt";
  std::ofstream(path) << serialize_graph(petersen_graph());
  EXPECT_EQ(read_graph_file(path).num_edges(), 15);
  std::filesystem::remove(path);
}

TEST(Families, SpecParsing) {
  EXPECT_EQ(parse_family_spec("doubled(complete(4))").name, "doubled_complete");
  const FamilySpec s = parse_family_spec("cycle_with_d_doubled(5,2)");
  EXPECT_EQ(s.params, (std::vector<long long>{5, 2}));
  EXPECT_EQ(parse_family_spec(s.str()).params, s.params);
  EXPECT_THROW(parse_family_spec("wheel(5)"), ParseError);
  EXPECT_THROW(parse_family_spec("cycle(5"), ParseError);
}

TEST(Families, DeclaredConnectivityHolds) {
  for (const char* text : {"cycle(6)", "doubled_cycle(4)", "cycle_with_d_doubled(5,2)", "tripled_triangle",
                           "complete(6)", "complete_bipartite(3,4)", "petersen", "doubled(complete(4))"}) {
    const FamilyGraph f = make_family(parse_family_spec(text));
    EXPECT_EQ(edge_connectivity(f.graph).value, f.connectivity) << text;
  }
}

TEST(Families, RandomIsSeededAndConnected) {
  const FamilyGraph a = make_family(parse_family_spec("random_k_ec(6,6,7)"));
  const FamilyGraph b = make_family(parse_family_spec("random_k_ec(6,6,7)"));
  EXPECT_EQ(a.graph, b.graph);
  EXPECT_TRUE(is_k_edge_connected(a.graph, 6));
  const FamilyGraph c = make_family(parse_family_spec("random_k_ec(6,6)"), 99);
  EXPECT_TRUE(is_k_edge_connected(c.graph, 6));
}

TEST(Families, ImpossibleParameters) {
  EXPECT_THROW(make_family(parse_family_spec("cycle(1)")), PreconditionError);
  EXPECT_THROW(make_family(parse_family_spec("cycle_with_d_doubled(4,5)")), PreconditionError);
}

TEST(Report, VerifyPassesAndFailsHonestly) {
  const RunReport ok = verify_generator(multiplied(complete_graph(4), 2), Generator::kZ3);
  EXPECT_TRUE(ok.pass()) << ok.str();
  EXPECT_EQ(ok.emitted, 124);
  ASSERT_TRUE(ok.census.has_value());
  EXPECT_EQ(*ok.census, 176);
  EXPECT_NE(ok.str().find("result: pass"), std::string::npos);

  const RunReport bad = verify_generator(petersen_graph(), Generator::kZ4);
  EXPECT_FALSE(bad.pass());
  EXPECT_NE(bad.str().find("result: fail"), std::string::npos);
  EXPECT_THROW(parse_generator("z5"), PreconditionError);
}
