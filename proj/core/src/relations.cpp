#include "blanketlab/relations.hpp"

#include <vector>

#include "blanketlab/error.hpp"

namespace blanketlab {

std::string_view to_string(Relation r) {
  switch (r) {
    case Relation::Parents: return "pa";
    case Relation::Children: return "ch";
    case Relation::Ancestors: return "an";
    case Relation::Descendants: return "de";
    case Relation::Spouses: return "sp";
    case Relation::District: return "dis";
    case Relation::Scc: return "scc";
    case Relation::Relatives: return "re";
    case Relation::Mates: return "ma";
  }
  return "pa";
}

std::optional<Relation> parse_relation(std::string_view text) {
  for (Relation r : {Relation::Parents, Relation::Children, Relation::Ancestors,
                     Relation::Descendants, Relation::Spouses, Relation::District,
                     Relation::Scc, Relation::Relatives, Relation::Mates}) {
    if (to_string(r) == text) return r;
  }
  return std::nullopt;
}

NodeSet single(const MixedGraph& g, NodeIndex i) {
  NodeSet s = g.empty_set();
  s.insert(i);
  return s;
}

namespace {

// Nodes reachable from `start` by one or more steps of `next`.
template <typename Next>
NodeSet reach(const MixedGraph& g, const NodeSet& start, Next&& next) {
  NodeSet seen = g.empty_set();
  std::vector<NodeIndex> frontier;
  start.for_each([&](NodeIndex i) {
    for (NodeIndex j : next(i)) {
      if (!seen.contains(j)) {
        seen.insert(j);
        frontier.push_back(j);
      }
    }
  });
  while (!frontier.empty()) {
    NodeIndex v = frontier.back();
    frontier.pop_back();
    for (NodeIndex j : next(v)) {
      if (!seen.contains(j)) {
        seen.insert(j);
        frontier.push_back(j);
      }
    }
  }
  return seen;
}

}  // namespace

NodeSet relation(const MixedGraph& g, Relation kind, const NodeSet& s) {
  if (s.universe() != g.size()) {
    throw Error(ErrorCode::UnknownNode, "node set does not belong to this graph");
  }
  NodeSet out = g.empty_set();
  switch (kind) {
    case Relation::Parents:
      s.for_each([&](NodeIndex i) { for (NodeIndex j : g.parents(i)) out.insert(j); });
      return out;
    case Relation::Children:
      s.for_each([&](NodeIndex i) { for (NodeIndex j : g.children(i)) out.insert(j); });
      return out;
    case Relation::Spouses:
      s.for_each([&](NodeIndex i) { for (NodeIndex j : g.spouses(i)) out.insert(j); });
      return out;
    case Relation::Ancestors:
      return reach(g, s, [&](NodeIndex i) -> const std::vector<NodeIndex>& { return g.parents(i); });
    case Relation::Descendants:
      return reach(g, s, [&](NodeIndex i) -> const std::vector<NodeIndex>& { return g.children(i); });
    case Relation::Scc:
      s.for_each([&](NodeIndex i) { out |= g.scc_members(g.scc_id(i)); });
      return out;
    case Relation::District:
      s.for_each([&](NodeIndex i) {
        for (NodeIndex j = 0; j < g.size(); ++j)
          if (g.district_id(j) == g.district_id(i)) out.insert(j);
      });
      return out;
    case Relation::Relatives:
      s.for_each([&](NodeIndex i) {
        for (NodeIndex j = 0; j < g.size(); ++j)
          if (g.relative_id(j) == g.relative_id(i)) out.insert(j);
      });
      return out;
    case Relation::Mates:
      s.for_each([&](NodeIndex i) {
        const NodeSet& own = g.scc_members(g.scc_id(i));
        own.for_each([&](NodeIndex a) {
          for (NodeIndex b : g.spouses(a))
            if (!g.same_scc(a, b)) out |= g.scc_members(g.scc_id(b));
        });
      });
      return out;
  }
  return out;
}

MixedGraph induced_subgraph(const MixedGraph& g, const NodeSet& s) {
  if (s.universe() != g.size()) {
    throw Error(ErrorCode::UnknownNode, "node set does not belong to this graph");
  }
  GraphSpec spec;
  s.for_each([&](NodeIndex i) { spec.nodes.push_back({g.label(i), g.role(i)}); });
  for (auto [a, b] : g.directed_edges())
    if (s.contains(a) && s.contains(b)) spec.edges.push_back({g.label(a), g.label(b), EdgeType::Directed});
  for (auto [a, b] : g.bidirected_edges())
    if (s.contains(a) && s.contains(b)) spec.edges.push_back({g.label(a), g.label(b), EdgeType::Bidirected});
  return MixedGraph::build(spec);
}

}  // namespace blanketlab
