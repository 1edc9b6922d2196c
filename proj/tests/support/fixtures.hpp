#pragma once

#include <filesystem>
#include <string>

#include "blanketlab/graph_io.hpp"

namespace blanketlab::testing {

inline std::filesystem::path fixture_path(const std::string& name) {
  return std::filesystem::path(BLANKETLAB_FIXTURE_DIR) / (name + ".graph");
}

// Loads fixtures/<name>.graph.
inline MixedGraph fixture(const std::string& name) { return read_graph_file(fixture_path(name)); }

}  // namespace blanketlab::testing
