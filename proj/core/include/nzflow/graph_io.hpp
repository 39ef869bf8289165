#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "nzflow/errors.hpp"
#include "nzflow/multigraph.hpp"

namespace nzflow {

/// Malformed graph text; `line()` is 1-based, 0 when the problem is at the end.
class ParseError : public Error {
 public:
  ParseError(int line, const std::string& what)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

/// "n m" then m lines "tail head", 0-indexed; '#' starts a comment. Edges get
/// ids 0..m-1 in file order.
Multigraph parse_graph(std::string_view text);

/// Edges in ascending id order, so parse_graph(serialize_graph(g)) equals g
/// up to renumbering the ids.
std::string serialize_graph(const Multigraph& g);

/// Throws ParseError (line 0) when the file cannot be read.
Multigraph read_graph_file(const std::filesystem::path& path);

/// 64-bit FNV-1a of serialize_graph(g), as 16 hex digits.
std::string graph_digest(const Multigraph& g);

}  // namespace nzflow
