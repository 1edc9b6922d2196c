#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>

#include "blanketlab/error.hpp"
#include "blanketlab/graph.hpp"

namespace blanketlab {

/// Parse failure with a 1-based source position.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& message);

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

// Line format:
//   node <label> <predictor|response|intervention|hidden>
//   edge <a> -> <b>
//   edge <a> <-> <b>
// '#' starts a comment that runs to the end of the line.
GraphSpec parse_graph_spec(std::string_view text);
MixedGraph parse_graph(std::string_view text);
MixedGraph read_graph_file(const std::filesystem::path& path);

/// Canonical text form; parse_graph(write_graph(g)) == g.
std::string write_graph(const MixedGraph& g);

/// Graphviz digraph; bidirected edges use dir=both, interventions are boxes.
std::string to_dot(const MixedGraph& g);

}  // namespace blanketlab
