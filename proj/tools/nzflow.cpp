// Command-line front end: connectivity, covers, generators, census, reports
// and family graphs. Exit 0 on success, 1 on a failed check or unmet
// precondition, 2 on usage or parse errors.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "nzflow/boundary.hpp"
#include "nzflow/census.hpp"
#include "nzflow/chain_cover.hpp"
#include "nzflow/connectivity.hpp"
#include "nzflow/errors.hpp"
#include "nzflow/families.hpp"
#include "nzflow/graph_io.hpp"
#include "nzflow/report.hpp"
#include "nzflow/z3_flows.hpp"
#include "nzflow/z4_flows.hpp"
#include "nzflow/z6_flows.hpp"

namespace {

using namespace nzflow;

constexpr int kFail = 1;
constexpr int kUsage = 2;

template <typename T>
std::string joined(const std::vector<T>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? " " : "") + std::to_string(xs[i]);
  return out;
}

int cmd_connectivity(const Multigraph& g) {
  if (g.num_vertices() < 2) {
    std::cout << "vertices: " << g.num_vertices() << "\nlambda: undefined\n";
    return 0;
  }
  const GlobalCut cut = edge_connectivity(g);
  std::cout << "lambda: " << cut.value << '\n';
  std::cout << "side: " << joined(cut.certificate.side) << '\n';
  std::cout << "cut: " << joined(cut.certificate.crossing_edges) << '\n';
  return 0;
}

int cmd_cover(const Multigraph& g) {
  const ChainCover cover = build_anchored_chain_cover(g);
  for (std::size_t i = 0; i < cover.chains.size(); ++i) {
    const Chain& c = cover.chains[i];
    const char* kind = c.kind == ChainKind::kCycle ? "cycle" : c.kind == ChainKind::kProperChain ? "chain" : "vertex";
    std::cout << "chain " << i + 1 << ' ' << kind << " u=" << c.u << " v=" << c.v << " vertices [" << joined(c.vertices)
              << "] edges [" << joined(c.edge_ids) << "] blocks " << c.cycles.size();
    if (c.in_anchor >= 0) std::cout << " anchors " << c.in_anchor << ' ' << c.out_anchor;
    std::cout << '\n';
  }
  std::cout << "external: " << joined(cover.external) << '\n';
  std::cout << "even_anchors: " << joined(cover.even_anchor_subset) << '\n';
  std::cout << "k: " << cover.k() << "\np: " << cover.p << '\n';
  std::cout << "bound: " << cover_count_bound(cover) << '\n';
  std::cout << "certified: " << certified_cover_count(g, cover) << '\n';
  if (const auto bad = cover_violation(g, cover)) {
    std::cout << "violation: " << *bad << '\n';
    return kFail;
  }
  return 0;
}

int cmd_gen(const Multigraph& g, const std::string& which, long long limit, const std::string& out_path) {
  std::ofstream file;
  if (!out_path.empty()) {
    file.open(out_path);
    if (!file) {
      std::cerr << "error: cannot write " << out_path << '\n';
      return kUsage;
    }
  }
  std::ostream& out = out_path.empty() ? std::cout : file;
  auto write = [&](const Flow& f) {
    out << f.serialize() << '\n';
    return true;
  };
  long long emitted = 0;
  switch (parse_generator(which)) {
    case Generator::kZ6:
      emitted = z6_flow_family(g, limit, write).emitted;
      break;
    case Generator::kZ4:
      emitted = z4_flow_family(g, limit, write).emitted;
      break;
    case Generator::kZ3:
      emitted = z3_flow_family(g, limit, [&](const Orientation& o) { return write(orientation_to_flow(g, o)); }).emitted;
      break;
  }
  std::cerr << "emitted: " << emitted << '\n';
  return 0;
}

int cmd_census(const Multigraph& g, const std::string& mode, const std::string& group, long long limit,
               const CensusLimits& limits) {
  if (mode == "poly") {
    const FlowPolynomial p = flow_polynomial(g, limits);
    std::cout << "polynomial: " << p.str() << '\n';
    if (!group.empty()) {
      const Group grp = Group::parse(group);
      std::cout << "value_at_" << grp.order() << ": " << p.evaluate(grp.order()) << '\n';
    }
    return 0;
  }
  if (group.empty()) {
    std::cerr << "error: --group is required for census " << mode << '\n';
    return kUsage;
  }
  const Group grp = Group::parse(group);
  if (mode == "count") {
    std::cout << count_nz_flows(g, grp, limits) << '\n';
  } else {
    enumerate_nz_flows(
        g, grp, limit,
        [](const Flow& f) {
          std::cout << f.serialize() << '\n';
          return true;
        },
        limits);
  }
  return 0;
}

int cmd_family(const std::string& text, std::uint64_t seed) {
  const FamilySpec spec = parse_family_spec(text);
  const FamilyGraph fam = make_family(spec, seed);
  std::cout << "# " << spec.str() << " lambda>=" << fam.connectivity << " attempts=" << fam.attempts << '\n';
  std::cout << serialize_graph(fam.graph);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Nowhere-zero flow families and exact counts"};
  app.require_subcommand(1);
  int threads = 1;
  app.add_option("--threads", threads, "Worker threads for counting")->check(CLI::PositiveNumber);

  std::string file, which, mode, group, out_path, family_text;
  long long limit = 100000;
  std::uint64_t seed = 0;

  auto* connectivity = app.add_subcommand("connectivity", "Edge connectivity with a minimum cut");
  connectivity->add_option("file", file)->required();
  auto* cover = app.add_subcommand("cover", "Anchored chain cover of a 3-edge-connected graph");
  cover->add_option("file", file)->required();

  auto* gen = app.add_subcommand("gen", "Emit flows from a generator, one per line");
  gen->add_option("generator", which)->required()->check(CLI::IsMember({"z6", "z4", "z3"}));
  gen->add_option("file", file)->required();
  gen->add_option("--limit", limit)->check(CLI::NonNegativeNumber);
  gen->add_option("--out", out_path);

  auto* census = app.add_subcommand("census", "Exact counts, flow polynomial or enumeration");
  census->add_option("mode", mode)->required()->check(CLI::IsMember({"count", "poly", "enum"}));
  census->add_option("file", file)->required();
  census->add_option("--group", group)->check(CLI::IsMember({"z2", "z3", "z4", "z5", "z6", "z2xz2", "z2xz3"}));
  census->add_option("--limit", limit)->check(CLI::NonNegativeNumber);

  auto* verify = app.add_subcommand("verify", "Run a generator and report against bound and census");
  verify->add_option("generator", which)->required()->check(CLI::IsMember({"z6", "z4", "z3"}));
  verify->add_option("file", file)->required();
  verify->add_option("--limit", limit)->check(CLI::NonNegativeNumber);

  auto* family = app.add_subcommand("family", "Print a family graph in the text format");
  family->add_option("spec", family_text)->required();
  family->add_option("--seed", seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  CensusLimits limits;
  limits.threads = threads;
  try {
    if (family->parsed()) return cmd_family(family_text, seed);
    const Multigraph g = read_graph_file(file);
    if (connectivity->parsed()) return cmd_connectivity(g);
    if (cover->parsed()) return cmd_cover(g);
    if (gen->parsed()) return cmd_gen(g, which, limit, out_path);
    if (census->parsed()) return cmd_census(g, mode, group, limit, limits);
    if (verify->parsed()) {
      VerifyOptions options;
      options.limit = limit;
      options.census = limits;
      const RunReport report = verify_generator(g, parse_generator(which), options);
      std::cout << report.str();
      return report.pass() ? 0 : kFail;
    }
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFail;
  }
  return kUsage;
}
