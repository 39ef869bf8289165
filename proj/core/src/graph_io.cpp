#include "nzflow/graph_io.hpp"

#include <charconv>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <vector>

namespace nzflow {
namespace {

std::vector<std::string_view> fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

long long number(std::string_view token, int line) {
  long long value = 0;
  const auto [end, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || end != token.data() + token.size()) {
    throw ParseError(line, "expected an integer, got '" + std::string(token) + "'");
  }
  if (value < 0) throw ParseError(line, "negative value " + std::string(token));
  return value;
}

}  // namespace

Multigraph parse_graph(std::string_view text) {
  std::optional<Multigraph> g;
  long long expected = 0;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    const auto tok = fields(line);
    if (tok.empty()) continue;
    if (tok.size() != 2) throw ParseError(line_no, "expected two integers");
    const long long a = number(tok[0], line_no);
    const long long b = number(tok[1], line_no);
    if (!g) {
      if (a > 1'000'000 || b > 10'000'000) throw ParseError(line_no, "graph too large");
      g.emplace(static_cast<int>(a));
      expected = b;
      continue;
    }
    if (g->num_edges() >= expected) throw ParseError(line_no, "more edges than the header declares");
    if (a >= g->num_vertices() || b >= g->num_vertices()) {
      throw ParseError(line_no, "vertex id out of range for n = " + std::to_string(g->num_vertices()));
    }
    g->add_edge(static_cast<Vertex>(a), static_cast<Vertex>(b));
  }
  if (!g) throw ParseError(0, "missing header line 'n m'");
  if (g->num_edges() != expected) {
    throw ParseError(0, "header declares " + std::to_string(expected) + " edges, found " +
                            std::to_string(g->num_edges()));
  }
  return std::move(*g);
}

std::string serialize_graph(const Multigraph& g) {
  std::ostringstream out;
  out << g.num_vertices() << ' ' << g.num_edges() << '\n';
  for (const Edge& e : g.edges()) out << e.tail << ' ' << e.head << '\n';
  return out.str();
}

Multigraph read_graph_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(0, "cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_graph(buf.str());
}

std::string graph_digest(const Multigraph& g) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : serialize_graph(g)) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i, h >>= 4) out[static_cast<std::size_t>(i)] = kHex[h & 15U];
  return out;
}

}  // namespace nzflow
