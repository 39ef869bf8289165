#pragma once

#include <functional>
#include <string>
#include <vector>

#include "nzflow/bounds.hpp"
#include "nzflow/flow.hpp"
#include "nzflow/group.hpp"
#include "nzflow/multigraph.hpp"

namespace nzflow {

/// Desk-scale caps for the exact oracle.
struct CensusLimits {
  int max_cycle_rank_order6 = 16;   // |group| >= 6
  int max_cycle_rank_order5 = 18;   // |group| == 5
  int max_cycle_rank_small = 20;    // |group| <= 4
  int max_edges_polynomial = 24;
  int threads = 1;

  int cycle_rank_cap(int order) const;
};

/// Number of non-loop edges outside a spanning forest.
int cycle_rank(const Multigraph& g);

/// Exact number of nowhere-zero flows, by enumerating nonzero values on the
/// co-tree edges of a spanning forest and solving for the tree edges. Loops
/// contribute independent factors of (|group| - 1). Throws CapExceeded above
/// the configured cycle rank.
BigInt count_nz_flows(const Multigraph& g, const Group& group, const CensusLimits& limits = {});

using FlowSink = std::function<bool(const Flow&)>;

/// Emits nowhere-zero flows in lexicographic order of their non-tree values
/// (ascending edge id, ascending group code) until `limit` or the sink
/// returns false. Returns the number emitted.
long long enumerate_nz_flows(const Multigraph& g, const Group& group, long long limit, const FlowSink& sink,
                             const CensusLimits& limits = {});

std::vector<Flow> collect_nz_flows(const Multigraph& g, const Group& group, long long limit,
                                   const CensusLimits& limits = {});

/// p(k) with p(|group|) = number of nowhere-zero flows for every group.
struct FlowPolynomial {
  std::vector<BigInt> coefficients;  // index = power of k

  BigInt evaluate(long long k) const;
  int degree() const;
  bool is_zero() const;
  std::string str() const;
};

/// Deletion-contraction on the highest-indexed edge, with series reduction
/// and memoisation on a relabelled edge multiset.
FlowPolynomial flow_polynomial(const Multigraph& g, const CensusLimits& limits = {});

}  // namespace nzflow
