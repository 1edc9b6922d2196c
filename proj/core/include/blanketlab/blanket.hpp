#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "blanketlab/graph.hpp"
#include "blanketlab/separation.hpp"

namespace blanketlab {

// Which closed-form blanket formula to apply: district-, SCC- or
// relative-based.
enum class Family { ADMG, DG, DMG };

std::string_view to_string(Family f);
std::optional<Family> parse_family(std::string_view text);

/// ADMG pairs with m-separation, DG and DMG with sigma-separation.
Criterion criterion_for(Family f);

/// Whether the formula for `f` applies to graphs of class `cls`.
bool family_accepts(Family f, GraphClass cls);

struct BlanketResult {
  NodeSet blanket;
  // Named formula terms in formula order, before role filtering.
  std::vector<std::pair<std::string, NodeSet>> formula_parts;
  Criterion criterion = Criterion::M;
};

/// Throws FamilyMismatch, NoResponse or MultipleResponses.
BlanketResult markov_blanket(const MixedGraph& g, Family family);

/// Every minimum-size S within `universe` such that each remaining universe
/// node is separated from the response given S. Exhaustive over subsets, so
/// the universe is capped at 20 nodes (UniverseTooLarge).
std::vector<NodeSet> minimal_blanket_oracle(const MixedGraph& g, Criterion c,
                                            const NodeSet& universe);

}  // namespace blanketlab
