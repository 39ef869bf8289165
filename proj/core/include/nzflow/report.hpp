#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nzflow/bounds.hpp"
#include "nzflow/census.hpp"
#include "nzflow/multigraph.hpp"

namespace nzflow {

enum class Generator { kZ6, kZ4, kZ3 };
std::string to_string(Generator g);
/// "z6", "z4" or "z3"; throws PreconditionError otherwise.
Generator parse_generator(std::string_view name);

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct RunReport {
  std::string digest;
  std::string generator;
  std::string variant;
  BigInt bound;
  long long emitted = 0;
  std::optional<BigInt> census;
  std::string census_note;  // "skipped: over cap" when the census did not run
  std::vector<CheckResult> checks;
  double wall_seconds = 0;

  bool pass() const;
  /// "key: value" lines, one check per line, ending with "result: pass|fail".
  std::string str() const;
};

struct VerifyOptions {
  long long limit = 100000;
  CensusLimits census;
};

/// Runs one generator, validates every flow on g, compares the distinct count
/// with the guaranteed bound and, below the census caps, with the exact count.
/// Precondition failures of the generator become a failed check.
RunReport verify_generator(const Multigraph& g, Generator which, const VerifyOptions& options = {});

}  // namespace nzflow
