#include "nzflow/families.hpp"

#include <cctype>
#include <random>

#include "nzflow/connectivity.hpp"
#include "nzflow/errors.hpp"
#include "nzflow/graph_io.hpp"

namespace nzflow {
namespace {

struct Cursor {
  std::string_view s;
  std::size_t i = 0;

  void skip() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  bool eat(char c) {
    skip();
    if (i < s.size() && s[i] == c) {
      ++i;
      return true;
    }
    return false;
  }
  std::string word() {
    skip();
    const std::size_t start = i;
    while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_')) ++i;
    return std::string(s.substr(start, i - start));
  }
  long long number() {
    const std::string w = word();
    if (w.empty() || w.find_first_not_of("0123456789") != std::string::npos) {
      throw ParseError(0, "bad family parameter '" + w + "'");
    }
    return std::stoll(w);
  }
};

struct Arity {
  std::string_view name;
  std::size_t min;
  std::size_t max;
};

constexpr Arity kArities[] = {
    {"cycle", 1, 1},    {"doubled_cycle", 1, 1}, {"cycle_with_d_doubled", 2, 2}, {"tripled_triangle", 0, 0},
    {"complete", 1, 1}, {"complete_bipartite", 2, 2}, {"petersen", 0, 0},        {"random_k_ec", 2, 3},
};

int as_int(long long x, long long lo, const char* what) {
  if (x < lo || x > 100000) throw PreconditionError(std::string(what) + " out of range");
  return static_cast<int>(x);
}

void assert_connectivity(const Multigraph& g, int expected, bool at_least) {
  const int lambda = g.num_vertices() < 2 ? 0 : edge_connectivity(g).value;
  if (at_least ? lambda < expected : lambda != expected) {
    throw InvariantViolation("family graph has edge connectivity " + std::to_string(lambda) + ", expected " +
                             (at_least ? "at least " : "") + std::to_string(expected));
  }
}

}  // namespace

std::string FamilySpec::str() const {
  std::string base = name == "doubled_complete" ? "complete" : name;
  if (!params.empty() || name == "doubled_complete") {
    base += '(';
    for (std::size_t i = 0; i < params.size(); ++i) base += (i ? "," : "") + std::to_string(params[i]);
    base += ')';
  }
  return name == "doubled_complete" ? "doubled(" + base + ")" : base;
}

FamilySpec parse_family_spec(std::string_view text) {
  Cursor c{text};
  FamilySpec spec;
  spec.name = c.word();
  if (spec.name == "doubled") {
    if (!c.eat('(') || c.word() != "complete" || !c.eat('(')) throw ParseError(0, "expected doubled(complete(n))");
    spec.name = "doubled_complete";
    spec.params.push_back(c.number());
    if (!c.eat(')') || !c.eat(')')) throw ParseError(0, "expected doubled(complete(n))");
  } else if (c.eat('(')) {
    do {
      spec.params.push_back(c.number());
    } while (c.eat(','));
    if (!c.eat(')')) throw ParseError(0, "expected ')' in family spec");
  }
  c.skip();
  if (c.i != text.size()) throw ParseError(0, "trailing characters in family spec");
  if (spec.name == "doubled_complete") return spec;
  for (const Arity& a : kArities) {
    if (a.name != spec.name) continue;
    if (spec.params.size() < a.min || spec.params.size() > a.max) {
      throw ParseError(0, "wrong number of parameters for " + spec.name);
    }
    return spec;
  }
  throw ParseError(0, "unknown family '" + spec.name + "'");
}

Multigraph cycle_graph(int n) { return cycle_with_doubled_edges(n, 0); }

Multigraph cycle_with_doubled_edges(int n, int d) {
  if (n < 2 || d < 0 || d > n) throw PreconditionError("cycle needs n >= 2 and 0 <= d <= n");
  Multigraph g(n);
  for (int i = 0; i < n; ++i) {
    g.add_edge(i, (i + 1) % n);
    if (i < d) g.add_edge(i, (i + 1) % n);
  }
  return g;
}

Multigraph complete_graph(int n) {
  if (n < 1) throw PreconditionError("complete graph needs n >= 1");
  Multigraph g(n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) g.add_edge(i, j);
  }
  return g;
}

Multigraph complete_bipartite_graph(int a, int b) {
  if (a < 1 || b < 1) throw PreconditionError("complete bipartite graph needs a, b >= 1");
  Multigraph g(a + b);
  for (int i = 0; i < a; ++i) {
    for (int j = 0; j < b; ++j) g.add_edge(i, a + j);
  }
  return g;
}

Multigraph petersen_graph() {
  Multigraph g(10);
  for (int i = 0; i < 5; ++i) g.add_edge(i, (i + 1) % 5);
  for (int i = 0; i < 5; ++i) g.add_edge(i, i + 5);
  for (int i = 0; i < 5; ++i) g.add_edge(5 + i, 5 + (i + 2) % 5);
  return g;
}

Multigraph multiplied(const Multigraph& g, int times) {
  Multigraph out(g.num_vertices());
  for (const Edge& e : g.edges()) {
    for (int t = 0; t < times; ++t) out.add_edge(e.tail, e.head);
  }
  return out;
}

FamilyGraph make_family(const FamilySpec& spec, std::uint64_t default_seed) {
  const auto& p = spec.params;
  FamilyGraph out;
  if (spec.name == "cycle") {
    out.graph = cycle_graph(as_int(p[0], 2, "n"));
    out.connectivity = 2;
  } else if (spec.name == "doubled_cycle") {
    const int n = as_int(p[0], 2, "n");
    out.graph = cycle_with_doubled_edges(n, n);
    out.connectivity = 4;
  } else if (spec.name == "cycle_with_d_doubled") {
    const int n = as_int(p[0], 2, "n");
    const int d = as_int(p[1], 0, "d");
    out.graph = cycle_with_doubled_edges(n, d);
    out.connectivity = n == 2 ? 2 + d : d == n ? 4 : 2;
  } else if (spec.name == "tripled_triangle") {
    out.graph = multiplied(complete_graph(3), 3);
    out.connectivity = 6;
  } else if (spec.name == "complete") {
    const int n = as_int(p[0], 2, "n");
    out.graph = complete_graph(n);
    out.connectivity = n - 1;
  } else if (spec.name == "complete_bipartite") {
    const int a = as_int(p[0], 1, "a");
    const int b = as_int(p[1], 1, "b");
    out.graph = complete_bipartite_graph(a, b);
    out.connectivity = std::min(a, b);
  } else if (spec.name == "petersen") {
    out.graph = petersen_graph();
    out.connectivity = 3;
  } else if (spec.name == "doubled_complete") {
    const int n = as_int(p[0], 2, "n");
    out.graph = multiplied(complete_graph(n), 2);
    out.connectivity = 2 * (n - 1);
  } else if (spec.name == "random_k_ec") {
    const int n = as_int(p[0], 2, "n");
    const int k = as_int(p[1], 1, "k");
    const std::uint64_t seed = p.size() > 2 ? static_cast<std::uint64_t>(p[2]) : default_seed;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> pick(0, n - 1);
    const int base = (k * n + 1) / 2;
    constexpr int kMaxAttempts = 10000;
    for (out.attempts = 1;; ++out.attempts) {
      if (out.attempts > kMaxAttempts) throw PreconditionError("no k-edge-connected sample found");
      Multigraph g(n);
      while (g.num_edges() < base + out.attempts - 1) {
        const int a = pick(rng);
        const int b = pick(rng);
        if (a != b) g.add_edge(std::min(a, b), std::max(a, b));
      }
      if (is_k_edge_connected(g, k)) {
        out.graph = std::move(g);
        break;
      }
    }
    out.connectivity = k;
    assert_connectivity(out.graph, k, true);
    return out;
  } else {
    throw PreconditionError("unknown family '" + spec.name + "'");
  }
  assert_connectivity(out.graph, out.connectivity, false);
  return out;
}

}  // namespace nzflow
