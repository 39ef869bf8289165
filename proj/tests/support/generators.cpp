#include "generators.hpp"

#include "nzflow/families.hpp"

namespace gen {

nzflow::Multigraph random_multigraph(std::uint64_t seed) {
  Rng rng(seed * 7919 + 17);
  const int n = 1 + rng.below(6);
  const int m = rng.below(13);
  nzflow::Multigraph g(n);
  for (int i = 0; i < m; ++i) g.add_edge(rng.below(n), rng.below(n));
  return g;
}

nzflow::Multigraph random_loopless(int n, int m, Rng& rng) {
  nzflow::Multigraph g(n);
  while (g.num_edges() < m) {
    const int a = rng.below(n);
    const int b = rng.below(n);
    if (a != b) g.add_edge(a, b);
  }
  return g;
}

nzflow::Multigraph prism() {
  nzflow::Multigraph g(6);
  for (int i = 0; i < 3; ++i) {
    g.add_edge(i, (i + 1) % 3);
    g.add_edge(3 + i, 3 + (i + 1) % 3);
    g.add_edge(i, i + 3);
  }
  return g;
}

nzflow::Multigraph cube() {
  nzflow::Multigraph g(8);
  for (int v = 0; v < 8; ++v) {
    for (int bit = 1; bit < 8; bit <<= 1) {
      if (v < (v ^ bit)) g.add_edge(v, v ^ bit);
    }
  }
  return g;
}

nzflow::Multigraph doubled_path(int n) {
  nzflow::Multigraph g(n);
  for (int i = 0; i + 1 < n; ++i) {
    g.add_edge(i, i + 1);
    g.add_edge(i, i + 1);
  }
  return g;
}

nzflow::Multigraph doubled_star(int leaves) {
  nzflow::Multigraph g(leaves + 1);
  for (int i = 1; i <= leaves; ++i) {
    g.add_edge(0, i);
    g.add_edge(0, i);
  }
  return g;
}

std::vector<Named> corpus() {
  using namespace nzflow;
  std::vector<Named> out;
  for (int n = 3; n <= 6; ++n) out.push_back({"C" + std::to_string(n), cycle_graph(n)});
  for (int n = 3; n <= 6; ++n) out.push_back({"doubled C" + std::to_string(n), cycle_with_doubled_edges(n, n)});
  out.push_back({"C5 one doubled", cycle_with_doubled_edges(5, 1)});
  out.push_back({"K4", complete_graph(4)});
  out.push_back({"K5", complete_graph(5)});
  out.push_back({"K33", complete_bipartite_graph(3, 3)});
  out.push_back({"prism", prism()});
  out.push_back({"cube", cube()});
  out.push_back({"Petersen", petersen_graph()});
  out.push_back({"tripled triangle", multiplied(complete_graph(3), 3)});
  out.push_back({"doubled K4", multiplied(complete_graph(4), 2)});
  out.push_back({"doubled P4", doubled_path(4)});
  out.push_back({"doubled star 3", doubled_star(3)});
  return out;
}

}  // namespace gen
