#include "nzflow/report.hpp"

#include <chrono>
#include <sstream>
#include <unordered_set>

#include "nzflow/boundary.hpp"
#include "nzflow/connectivity.hpp"
#include "nzflow/errors.hpp"
#include "nzflow/graph_io.hpp"
#include "nzflow/z3_flows.hpp"
#include "nzflow/z4_flows.hpp"
#include "nzflow/z6_flows.hpp"

namespace nzflow {
namespace {

BoundVariant variant_for(const Multigraph& g, Generator which) {
  switch (which) {
    case Generator::kZ6:
      return g.num_vertices() >= 2 && is_k_edge_connected(g, 3) ? BoundVariant::kZ6ThreeEdgeConnected
                                                                : BoundVariant::kZ6TwoEdgeConnected;
    case Generator::kZ4:
      return BoundVariant::kZ4;
    case Generator::kZ3:
      return BoundVariant::kZ3;
  }
  return BoundVariant::kZ3;
}

Group group_for(Generator which) {
  switch (which) {
    case Generator::kZ6: return Group::z2xz3();
    case Generator::kZ4: return Group::z2xz2();
    case Generator::kZ3: return Group::cyclic(3);
  }
  return Group::cyclic(3);
}

}  // namespace

std::string to_string(Generator g) {
  switch (g) {
    case Generator::kZ6: return "z6";
    case Generator::kZ4: return "z4";
    case Generator::kZ3: return "z3";
  }
  return "?";
}

Generator parse_generator(std::string_view name) {
  if (name == "z6") return Generator::kZ6;
  if (name == "z4") return Generator::kZ4;
  if (name == "z3") return Generator::kZ3;
  throw PreconditionError("unknown generator '" + std::string(name) + "'");
}

bool RunReport::pass() const {
  if (checks.empty()) return false;
  for (const auto& c : checks) {
    if (!c.pass) return false;
  }
  return true;
}

std::string RunReport::str() const {
  std::ostringstream out;
  out << "input: " << digest << '\n';
  out << "generator: " << generator << '\n';
  out << "variant: " << variant << '\n';
  out << "bound: " << bound << '\n';
  out << "emitted: " << emitted << '\n';
  out << "census: ";
  if (census) {
    out << *census << '\n';
  } else {
    out << census_note << '\n';
  }
  for (const auto& c : checks) {
    out << "check " << c.name << ": " << (c.pass ? "pass" : "fail");
    if (!c.detail.empty()) out << " (" << c.detail << ')';
    out << '\n';
  }
  out << "wall_seconds: " << wall_seconds << '\n';
  out << "result: " << (pass() ? "pass" : "fail") << '\n';
  return out.str();
}

RunReport verify_generator(const Multigraph& g, Generator which, const VerifyOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  RunReport r;
  r.digest = graph_digest(g);
  r.generator = to_string(which);
  const Group grp = group_for(which);

  const BoundVariant variant = variant_for(g, which);
  r.variant = to_string(variant);
  r.bound = g.num_vertices() >= 2 ? guaranteed_bound(variant, g.num_vertices(), g.num_edges()) : BigInt(1);

  std::unordered_set<std::string> seen;
  long long invalid = 0;
  auto check_flow = [&](const Flow& f) {
    if (!validate_flow(g, f) || !is_nowhere_zero(f)) ++invalid;
    seen.insert(f.serialize());
    ++r.emitted;
    return true;
  };
  try {
    switch (which) {
      case Generator::kZ6:
        z6_flow_family(g, options.limit, check_flow);
        break;
      case Generator::kZ4:
        z4_flow_family(g, options.limit, check_flow);
        break;
      case Generator::kZ3: {
        const Boundary zero = Boundary::zero(g.num_vertices());
        z3_flow_family(g, options.limit, [&](const Orientation& o) {
          if (!verify_beta_flow(g, o, zero)) ++invalid;
          return check_flow(orientation_to_flow(g, o));
        });
        break;
      }
    }
    r.checks.push_back({"preconditions", true, ""});
  } catch (const CapExceeded& e) {
    r.checks.push_back({"preconditions", false, e.what()});
  } catch (const PreconditionError& e) {
    r.checks.push_back({"preconditions", false, e.what()});
  }

  r.checks.push_back({"valid", invalid == 0, std::to_string(invalid) + " invalid"});
  r.checks.push_back({"distinct", static_cast<long long>(seen.size()) == r.emitted,
                      std::to_string(seen.size()) + " distinct"});
  r.checks.push_back({"bound", BigInt(r.emitted) >= r.bound, r.emitted >= options.limit ? "stopped at limit" : ""});
  try {
    r.census = count_nz_flows(g, grp, options.census);
    r.checks.push_back({"census", BigInt(r.emitted) <= *r.census, ""});
  } catch (const CapExceeded&) {
    r.census_note = "skipped: over cap";
  }
  r.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

}  // namespace nzflow
