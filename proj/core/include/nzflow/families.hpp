#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "nzflow/multigraph.hpp"

namespace nzflow {

/// A named family with integer parameters, e.g. "doubled(complete(4))" is
/// {"doubled_complete", {4}}.
struct FamilySpec {
  std::string name;
  std::vector<long long> params;

  std::string str() const;
};

/// Accepts cycle(n), doubled_cycle(n), cycle_with_d_doubled(n,d),
/// tripled_triangle, complete(n), complete_bipartite(a,b), petersen,
/// doubled(complete(n)), random_k_ec(n,k[,seed]). Throws ParseError.
FamilySpec parse_family_spec(std::string_view text);

struct FamilyGraph {
  Multigraph graph;
  int connectivity = 0;  // asserted at construction; a lower bound for random_k_ec
  int attempts = 1;
};

/// Deterministic construction; random_k_ec draws from mt19937_64(seed),
/// falling back to `default_seed` when the spec has no seed. Throws
/// PreconditionError for impossible parameters and InvariantViolation when
/// the declared connectivity fails.
FamilyGraph make_family(const FamilySpec& spec, std::uint64_t default_seed = 0);

Multigraph cycle_graph(int n);
/// Cycle 0-1-...-(n-1)-0 whose first d edges are doubled.
Multigraph cycle_with_doubled_edges(int n, int d);
Multigraph complete_graph(int n);
Multigraph complete_bipartite_graph(int a, int b);
Multigraph petersen_graph();
/// Every edge repeated `times` times.
Multigraph multiplied(const Multigraph& g, int times);

}  // namespace nzflow
