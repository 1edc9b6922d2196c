#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "blanketlab/blanket.hpp"
#include "blanketlab/graph.hpp"
#include "blanketlab/separation.hpp"
#include "blanketlab/validation.hpp"

namespace blanketlab {

// Analysis modes coincide with the five settings.
using Mode = Setting;

Criterion criterion_for(Mode mode);
Family frontier_family(Mode mode);

enum class StructureKind { SubDistrict, District, ComponentDistrict };

std::string_view to_string(StructureKind k);

/// An intervention linked to Y through a chain of nodes (or SCCs for
/// ComponentDistrict). `sequence` runs from the intervened end towards Y,
/// i.e. i_n ... i_1; node-level chains hold singleton sets.
struct InterventionStructure {
  NodeIndex intervention = 0;
  StructureKind kind = StructureKind::SubDistrict;
  std::vector<NodeSet> sequence;

  friend bool operator==(const InterventionStructure&, const InterventionStructure&) = default;
};

std::string describe(const MixedGraph& g, const InterventionStructure& s);

struct Collider {
  NodeSet members;
  std::size_t position = 0;  // k in i_k, so 1 is the element next to Y
};

/// Throws SettingViolation when `g` fails `mode`.
std::vector<InterventionStructure> enumerate_structures(const MixedGraph& g, Mode mode);

/// Colliders in ascending position. Throws NoColliderFound when there are
/// none unless `allow_empty` is set.
std::vector<Collider> structure_colliders(const MixedGraph& g, const InterventionStructure& s,
                                          bool allow_empty = false);

enum class Policy { AllChoices, FarthestFromY, SingletonsOnly };

std::string_view to_string(Policy p);
std::optional<Policy> parse_policy(std::string_view text);

enum class ChoiceKind { CompleteSet, EligibleSet, OverallSet, Forced };

std::string_view to_string(ChoiceKind k);

struct ColliderChoice {
  ChoiceKind kind = ChoiceKind::Forced;
  // picks[h]: colliders chosen on the h-th enumerated structure.
  std::vector<std::vector<NodeSet>> picks;

  /// Union of every picked collider (empty set over `universe` if none).
  NodeSet picked(std::size_t universe) const;
};

/// Throws TooManyColliders when AllChoices would exceed 12 distinct colliders
/// or the singleton product grows unreasonably.
std::vector<ColliderChoice> collider_choices(const MixedGraph& g, Mode mode, Policy policy);

struct InterventionSplit {
  NodeSet n_int;
  NodeSet n_minus_int;
};

/// Throws InvalidChoice. S1 and S3 need no choice and ignore the argument.
InterventionSplit intervention_set(const MixedGraph& g, Mode mode, const ColliderChoice& choice);

enum class Uniqueness { Yes, No, Unknown };

std::string_view to_string(Uniqueness u);

struct StabilityResult {
  Mode mode = Mode::S1;
  NodeSet n_int;
  NodeSet n_minus_int;
  NodeSet frontier;
  ColliderChoice choice;
  Uniqueness unique = Uniqueness::Unknown;
  std::vector<NodeSet> all_frontiers;  // sorted, distinct

  /// The stable blanket, present only when the frontier is unique.
  std::optional<NodeSet> blanket() const;
};

StabilityResult stable_frontier(const MixedGraph& g, Mode mode, const ColliderChoice& choice);

struct UniquenessCheck {
  bool holds = true;
  std::optional<std::pair<NodeSet, NodeSet>> witness;  // violating collider pair
};

/// Sufficient condition for a unique frontier (S2 node colliders, S4 SCC
/// colliders). S1 and S3 hold trivially; S5 is not covered (InvalidArgument).
UniquenessCheck uniqueness_condition(const MixedGraph& g, Mode mode);

/// Reports every distinct frontier over singleton collider choices instead of
/// choosing one when they differ.
StabilityResult stable_blanket(const MixedGraph& g, Mode mode);

/// True iff every intervention is separated from Y given `s`.
bool verify_intervention_stable(const MixedGraph& g, const NodeSet& s, Criterion c);

namespace detail {
std::vector<InterventionStructure> enumerate_structures_unchecked(const MixedGraph& g, Mode mode);
}  // namespace detail

}  // namespace blanketlab
