#pragma once

#include <optional>
#include <string_view>

#include "blanketlab/graph.hpp"

namespace blanketlab {

enum class Relation {
  Parents,
  Children,
  Ancestors,    // proper: i is its own ancestor only through a directed cycle
  Descendants,  // proper, same convention
  Spouses,
  District,     // includes the node itself
  Scc,          // includes the node itself
  Relatives,    // SCCs chained by bidirected edges; includes scc and district
  Mates,        // SCCs joined to the node's SCC by a bidirected edge
};

std::string_view to_string(Relation r);
std::optional<Relation> parse_relation(std::string_view text);

/// Union of the relation over every member of `s`.
NodeSet relation(const MixedGraph& g, Relation kind, const NodeSet& s);

inline NodeSet parents(const MixedGraph& g, const NodeSet& s) { return relation(g, Relation::Parents, s); }
inline NodeSet children(const MixedGraph& g, const NodeSet& s) { return relation(g, Relation::Children, s); }
inline NodeSet ancestors(const MixedGraph& g, const NodeSet& s) { return relation(g, Relation::Ancestors, s); }
inline NodeSet descendants(const MixedGraph& g, const NodeSet& s) { return relation(g, Relation::Descendants, s); }
inline NodeSet district(const MixedGraph& g, const NodeSet& s) { return relation(g, Relation::District, s); }
inline NodeSet scc(const MixedGraph& g, const NodeSet& s) { return relation(g, Relation::Scc, s); }
inline NodeSet relatives(const MixedGraph& g, const NodeSet& s) { return relation(g, Relation::Relatives, s); }

NodeSet single(const MixedGraph& g, NodeIndex i);

/// Subgraph over `s` with roles preserved and node indices renumbered.
MixedGraph induced_subgraph(const MixedGraph& g, const NodeSet& s);

}  // namespace blanketlab
