#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nzflow/boundary.hpp"
#include "nzflow/bounds.hpp"
#include "nzflow/multigraph.hpp"

namespace nzflow {

/// Directions prescribed on the edges at the distinguished vertex.
using Preorientation = std::map<EdgeId, bool>;

enum class Z3Case { kBase, kCase1, kCase2, kCase3, kCase4, kCase5, kCaseA, kCaseB };
std::string to_string(Z3Case c);

/// Degree-6 count of a graph against 11/30 |G| + 85/30.
struct CaiCheck {
  int vertices = 0;
  int degree6 = 0;
  bool simple = false;
  bool holds() const { return 30 * degree6 >= 11 * vertices + 85; }
};
CaiCheck cai_check(const Multigraph& g);

/// Clique expansion of g at v followed by a greedy maximal removable set.
struct CliqueRemoval {
  Multigraph expanded;                 // G'
  std::vector<Vertex> new_vertices;    // X, labels in G'
  std::vector<EdgeId> removable;       // F'
  std::vector<EdgeId> kept;            // F: edges of F' off X, all edges of g
  Multigraph reduced;                  // G' - F'
  std::vector<Vertex> to_expanded;     // g label -> G' label, -1 for v
};
CliqueRemoval clique_removal(const Multigraph& g, Vertex v);

/// One step of the recursion.
struct Z3Node {
  Z3Case tag = Z3Case::kBase;
  std::optional<Z3Case> reduced_to;  // set for Case 4 and Case B
  int depth = 0;
  int parent = -1;
  int n = 0;
  int m = 0;
  std::vector<long long> child_counts;
  long long emitted = 0;
  bool complete = true;             // not cut short by the limit
  int n_prime = 0;                  // Case 2
  int n_double_prime = 0;
  int removable = -1;               // |F| in Case A/B
  std::optional<bool> hypotheses;   // Case 3
  std::optional<CaiCheck> cai;      // Case A/B
};

struct Z3Options {
  int small_case_threshold = 14;
  SearchLimits search;
  std::size_t max_recorded_nodes = 200'000;
};

struct Z3FamilyStats {
  int vertices = 0;
  int split_lifts = 0;
  int balanced_preorientations = 0;
  BigInt guarantee;
  long long emitted = 0;
  std::vector<Z3Node> nodes;
  std::map<Z3Case, int> case_counts;
};

using Z3Sink = std::function<bool(const Orientation&)>;

/// Recursive generator for one preorientation. g must be loopless,
/// 6-edge-connected with maximum degree at most 7, and pre a balanced
/// orientation of every edge at v. Emits distinct orientations of g.
long long z3_extensions(const Multigraph& g, Vertex v, const Preorientation& pre, long long limit, const Z3Sink& sink,
                        const Z3Options& options = {}, Z3FamilyStats* stats = nullptr);

/// Distinct nowhere-zero Z3-flows of a 6-edge-connected graph as
/// orientations of g. Loops are dropped and high degrees split before the
/// recursion runs at vertex 0 for every balanced preorientation of its edges
/// in lexicographic order. Throws ConnectivityError when g is not
/// 6-edge-connected and CapExceeded("instance too large") when the search
/// oracle hits its limits.
Z3FamilyStats z3_flow_family(const Multigraph& g, long long limit, const Z3Sink& sink, const Z3Options& options = {});

}  // namespace nzflow
