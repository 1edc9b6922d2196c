#include "blanketlab/projection.hpp"

#include <vector>

#include "blanketlab/error.hpp"

namespace blanketlab {

MixedGraph latent_project(const MixedGraph& g, const NodeSet& observed) {
  if (observed.universe() != g.size()) {
    throw Error(ErrorCode::UnknownNode, "observed set does not belong to this graph");
  }
  const std::size_t n = g.size();
  for (NodeIndex v = 0; v < n; ++v) {
    if (!observed.contains(v) && g.role(v) != NodeRole::Hidden) {
      throw Error(ErrorCode::HiddenObservedMismatch,
                  "node " + g.label(v) + " is not hidden but is missing from the observed set");
    }
  }
  const NodeSet hidden = g.all_nodes() - observed;

  // down[i]: observed or hidden nodes reachable from i by a directed path whose
  // interior is hidden. up[j]: removed nodes h with such a path h -> ... -> j,
  // together with j itself.
  std::vector<NodeSet> down(n, g.empty_set());
  std::vector<NodeSet> up(n, g.empty_set());
  for (NodeIndex i = 0; i < n; ++i) {
    std::vector<NodeIndex> stack{i};
    NodeSet seen = g.empty_set();
    while (!stack.empty()) {
      NodeIndex v = stack.back();
      stack.pop_back();
      for (NodeIndex w : g.children(v)) {
        if (seen.contains(w)) continue;
        seen.insert(w);
        if (hidden.contains(w)) stack.push_back(w);
      }
    }
    down[i] = seen;
  }
  for (NodeIndex j = 0; j < n; ++j) {
    if (!observed.contains(j)) continue;
    up[j].insert(j);
    hidden.for_each([&](NodeIndex h) {
      if (down[h].contains(j)) up[j].insert(h);
    });
  }

  GraphSpec spec;
  observed.for_each([&](NodeIndex v) { spec.nodes.push_back({g.label(v), g.role(v)}); });
  observed.for_each([&](NodeIndex i) {
    (down[i] & observed).for_each([&](NodeIndex j) {
      if (i != j) spec.edges.push_back({g.label(i), g.label(j), EdgeType::Directed});
    });
  });
  const std::vector<NodeIndex> obs = observed.elements();
  for (std::size_t x = 0; x < obs.size(); ++x) {
    for (std::size_t y = x + 1; y < obs.size(); ++y) {
      const NodeIndex i = obs[x];
      const NodeIndex j = obs[y];
      // Shared hidden ancestor: i <- ... <- h -> ... -> j.
      bool bi = !(up[i] & up[j] & hidden).empty();
      // Hidden-mediated chains meeting at a bidirected edge (covers i <-> j too).
      if (!bi) {
        up[i].for_each([&](NodeIndex a) {
          if (bi) return;
          for (NodeIndex b : g.spouses(a)) {
            if (up[j].contains(b)) {
              bi = true;
              return;
            }
          }
        });
      }
      if (bi) spec.edges.push_back({g.label(i), g.label(j), EdgeType::Bidirected});
    }
  }
  return MixedGraph::build(spec);
}

MixedGraph latent_project(const MixedGraph& g) {
  return latent_project(g, g.all_nodes() - g.with_role(NodeRole::Hidden));
}

}  // namespace blanketlab
