#include "blanketlab/graph_io.hpp"

#include <fstream>
#include <sstream>
#include <vector>

namespace blanketlab {

ParseError::ParseError(std::size_t line, std::size_t column, const std::string& message)
    : Error(ErrorCode::ParseError,
            "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message),
      line_(line),
      column_(column) {}

namespace {

struct Token {
  std::string_view text;
  std::size_t column;  // 1-based
};

std::vector<Token> tokenize(std::string_view line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    if (line[i] == '#') break;
    if (line[i] == ' ' || line[i] == '\t' || line[i] == '\r') {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r' && line[j] != '#') ++j;
    out.push_back({line.substr(i, j - i), i + 1});
    i = j;
  }
  return out;
}

}  // namespace

GraphSpec parse_graph_spec(std::string_view text) {
  GraphSpec spec;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view line = text.substr(pos, end - pos);
    ++line_no;
    pos = end + 1;

    const auto tokens = tokenize(line);
    if (tokens.empty()) {
      if (end == text.size()) break;
      continue;
    }
    const Token& head = tokens.front();
    auto fail = [&](const Token& at, const std::string& what) -> ParseError {
      return ParseError(line_no, at.column, what);
    };
    if (head.text == "node") {
      if (tokens.size() != 3) {
        throw fail(tokens.size() > 3 ? tokens[3] : head, "expected 'node <label> <role>'");
      }
      auto role = parse_role(tokens[2].text);
      if (!role) throw fail(tokens[2], "unknown role '" + std::string(tokens[2].text) + "'");
      spec.nodes.push_back({std::string(tokens[1].text), *role});
    } else if (head.text == "edge") {
      if (tokens.size() != 4) {
        throw fail(tokens.size() > 4 ? tokens[4] : head, "expected 'edge <a> -> <b>' or 'edge <a> <-> <b>'");
      }
      EdgeType type;
      if (tokens[2].text == "->") {
        type = EdgeType::Directed;
      } else if (tokens[2].text == "<->") {
        type = EdgeType::Bidirected;
      } else {
        throw fail(tokens[2], "unknown edge operator '" + std::string(tokens[2].text) + "'");
      }
      spec.edges.push_back({std::string(tokens[1].text), std::string(tokens[3].text), type});
    } else {
      throw fail(head, "unknown directive '" + std::string(head.text) + "'");
    }
    if (end == text.size()) break;
  }
  return spec;
}

MixedGraph parse_graph(std::string_view text) { return MixedGraph::build(parse_graph_spec(text)); }

MixedGraph read_graph_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::InvalidArgument, "cannot read graph file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_graph(buf.str());
}

std::string write_graph(const MixedGraph& g) {
  std::string out;
  for (NodeIndex v = 0; v < g.size(); ++v) {
    out += "node " + g.label(v) + " " + std::string(to_string(g.role(v))) + "\n";
  }
  for (auto [a, b] : g.directed_edges()) out += "edge " + g.label(a) + " -> " + g.label(b) + "\n";
  for (auto [a, b] : g.bidirected_edges()) out += "edge " + g.label(a) + " <-> " + g.label(b) + "\n";
  return out;
}

namespace {

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string to_dot(const MixedGraph& g) {
  std::string out = "digraph G {\n";
  for (NodeIndex v = 0; v < g.size(); ++v) {
    std::string attrs;
    switch (g.role(v)) {
      case NodeRole::Predictor: attrs = "shape=ellipse"; break;
      case NodeRole::Response: attrs = "shape=ellipse, peripheries=2"; break;
      case NodeRole::Intervention: attrs = "shape=box"; break;
      case NodeRole::Hidden: attrs = "shape=ellipse, style=dashed"; break;
    }
    out += "  " + quoted(g.label(v)) + " [" + attrs + "];\n";
  }
  for (auto [a, b] : g.directed_edges()) {
    out += "  " + quoted(g.label(a)) + " -> " + quoted(g.label(b)) + ";\n";
  }
  for (auto [a, b] : g.bidirected_edges()) {
    out += "  " + quoted(g.label(a)) + " -> " + quoted(g.label(b)) + " [dir=both, style=dashed];\n";
  }
  return out + "}\n";
}

}  // namespace blanketlab
