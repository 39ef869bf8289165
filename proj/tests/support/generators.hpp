#pragma once

// Hand-rolled deterministic generators for property tests.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "nzflow/multigraph.hpp"

namespace gen {

/// splitmix64; tiny, portable, reproducible across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  int below(int bound) { return static_cast<int>(next() % static_cast<std::uint64_t>(bound)); }

 private:
  std::uint64_t state_;
};

/// n in 1..6, m in 0..12, loops and parallel edges allowed.
nzflow::Multigraph random_multigraph(std::uint64_t seed);

/// Random multigraph on n vertices with m edges, no loops.
nzflow::Multigraph random_loopless(int n, int m, Rng& rng);

struct Named {
  std::string name;
  nzflow::Multigraph graph;
};

/// Small deterministic graphs used across tests: cycles, doubled cycles,
/// complete graphs, Petersen, prism, cube, K33, tripled triangle, doubled K4.
std::vector<Named> corpus();

nzflow::Multigraph prism();
nzflow::Multigraph cube();
/// Path 0-1-...-(n-1) with every edge doubled.
nzflow::Multigraph doubled_path(int n);
/// Star with centre 0 and every edge doubled.
nzflow::Multigraph doubled_star(int leaves);

}  // namespace gen
