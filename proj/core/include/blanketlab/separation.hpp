#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "blanketlab/graph.hpp"

namespace blanketlab {

enum class Criterion { D, M, Sigma };

std::string_view to_string(Criterion c);
std::optional<Criterion> parse_criterion(std::string_view text);

// Orientation of one path step relative to the direction of travel.
enum class StepKind {
  Forward,   // a -> b
  Backward,  // a <- b
  Bi,        // a <-> b
};

struct Path {
  std::vector<NodeIndex> nodes;
  std::vector<StepKind> steps;  // steps[k] joins nodes[k] and nodes[k + 1]

  friend bool operator==(const Path&, const Path&) = default;
};

// Ordered by length, then node sequence, then step kinds.
bool path_less(const Path& a, const Path& b);

std::string format_path(const MixedGraph& g, const Path& p);

/// True when every step corresponds to an edge of `g` and nodes are distinct.
bool is_valid_path(const MixedGraph& g, const Path& p);

/// Every simple path between a and b; parallel edges yield distinct paths.
std::vector<Path> enumerate_paths(const MixedGraph& g, NodeIndex a, NodeIndex b);

/// Throws InvalidPath or CriterionUnsupported.
bool is_blocked(const MixedGraph& g, const Path& p, const NodeSet& z, Criterion c);

/// Exhaustive path search: true iff every path between A and B is blocked by Z.
bool separated_oracle(const MixedGraph& g, const NodeSet& a, const NodeSet& b,
                      const NodeSet& z, Criterion c);

/// Reachability over walk states; linear in nodes plus edges per query.
bool separated(const MixedGraph& g, const NodeSet& a, const NodeSet& b, const NodeSet& z,
               Criterion c);

}  // namespace blanketlab
