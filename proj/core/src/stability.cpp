#include "blanketlab/stability.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "blanketlab/error.hpp"
#include "blanketlab/relations.hpp"

namespace blanketlab {

Criterion criterion_for(Mode mode) {
  switch (mode) {
    case Mode::S1: return Criterion::D;
    case Mode::S2:
    case Mode::S5: return Criterion::M;
    case Mode::S3:
    case Mode::S4: return Criterion::Sigma;
  }
  return Criterion::M;
}

Family frontier_family(Mode mode) {
  switch (mode) {
    case Mode::S3: return Family::DG;
    case Mode::S4: return Family::DMG;
    default: return Family::ADMG;
  }
}

std::string_view to_string(StructureKind k) {
  switch (k) {
    case StructureKind::SubDistrict: return "sub-district";
    case StructureKind::District: return "district";
    case StructureKind::ComponentDistrict: return "component-district";
  }
  return "sub-district";
}

std::string_view to_string(Policy p) {
  switch (p) {
    case Policy::AllChoices: return "all";
    case Policy::FarthestFromY: return "farthest";
    case Policy::SingletonsOnly: return "singletons";
  }
  return "all";
}

std::optional<Policy> parse_policy(std::string_view text) {
  if (text == "all") return Policy::AllChoices;
  if (text == "farthest") return Policy::FarthestFromY;
  if (text == "singletons") return Policy::SingletonsOnly;
  return std::nullopt;
}

std::string_view to_string(ChoiceKind k) {
  switch (k) {
    case ChoiceKind::CompleteSet: return "complete-set";
    case ChoiceKind::EligibleSet: return "eligible-set";
    case ChoiceKind::OverallSet: return "overall-set";
    case ChoiceKind::Forced: return "forced";
  }
  return "forced";
}

std::string_view to_string(Uniqueness u) {
  switch (u) {
    case Uniqueness::Yes: return "true";
    case Uniqueness::No: return "false";
    case Uniqueness::Unknown: return "unknown";
  }
  return "unknown";
}

namespace {

std::string set_text(const MixedGraph& g, const NodeSet& s) {
  const auto labels = g.labels_of(s);
  if (labels.size() == 1) return labels.front();
  std::string out = "{";
  for (std::size_t k = 0; k < labels.size(); ++k) out += (k ? "," : "") + labels[k];
  return out + "}";
}

ChoiceKind choice_kind(Mode mode) {
  switch (mode) {
    case Mode::S2: return ChoiceKind::CompleteSet;
    case Mode::S4: return ChoiceKind::EligibleSet;
    case Mode::S5: return ChoiceKind::OverallSet;
    default: return ChoiceKind::Forced;
  }
}

bool is_predictor(const MixedGraph& g, NodeIndex v) { return g.role(v) == NodeRole::Predictor; }

// Simple bidirected chains starting at `first` that avoid Y; `emit` receives
// each chain in order i_1 ... i_n.
template <typename Emit>
void bidirected_chains(const MixedGraph& g, NodeIndex first, NodeIndex y, Emit&& emit) {
  std::vector<NodeIndex> chain{first};
  NodeSet used = single(g, first);
  used.insert(y);
  auto dfs = [&](auto&& self) -> void {
    emit(chain);
    for (NodeIndex w : g.spouses(chain.back())) {
      if (used.contains(w) || !is_predictor(g, w)) continue;
      chain.push_back(w);
      used.insert(w);
      self(self);
      used.erase(w);
      chain.pop_back();
    }
  };
  dfs(dfs);
}

void node_chains(const MixedGraph& g, NodeIndex y, const std::vector<NodeIndex>& starts,
                 StructureKind kind, std::vector<InterventionStructure>& out) {
  for (NodeIndex first : starts) {
    if (first == y || !is_predictor(g, first)) continue;
    bidirected_chains(g, first, y, [&](const std::vector<NodeIndex>& chain) {
      for (NodeIndex i : g.parents(chain.back())) {
        if (g.role(i) != NodeRole::Intervention) continue;
        InterventionStructure s{i, kind, {}};
        for (auto it = chain.rbegin(); it != chain.rend(); ++it) s.sequence.push_back(single(g, *it));
        out.push_back(std::move(s));
      }
    });
  }
}

bool points_into(const MixedGraph& g, const NodeSet& from, const NodeSet& to) {
  bool hit = false;
  from.for_each([&](NodeIndex v) {
    for (NodeIndex w : g.children(v))
      if (to.contains(w)) hit = true;
  });
  return hit;
}

void sort_structures(std::vector<InterventionStructure>& v) {
  std::sort(v.begin(), v.end(), [](const InterventionStructure& a, const InterventionStructure& b) {
    if (a.kind != b.kind) return a.kind < b.kind;
    if (a.intervention != b.intervention) return a.intervention < b.intervention;
    if (a.sequence.size() != b.sequence.size()) return a.sequence.size() < b.sequence.size();
    return a.sequence < b.sequence;
  });
}

// Members plus descendants.
NodeSet closure(const MixedGraph& g, const NodeSet& s) { return s | descendants(g, s); }

}  // namespace

std::string describe(const MixedGraph& g, const InterventionStructure& s) {
  std::string out = "(" + g.label(s.intervention) + "; [";
  for (std::size_t k = 0; k < s.sequence.size(); ++k) {
    out += (k ? ", " : "") + set_text(g, s.sequence[k]);
  }
  return out + "])";
}

NodeSet ColliderChoice::picked(std::size_t universe) const {
  NodeSet out(universe);
  for (const auto& per : picks)
    for (const auto& c : per) out |= c;
  return out;
}

namespace detail {

std::vector<InterventionStructure> enumerate_structures_unchecked(const MixedGraph& g, Mode mode) {
  const NodeIndex y = g.response();
  const NodeSet ys = single(g, y);
  const NodeSet y_scc = scc(g, ys);
  std::vector<InterventionStructure> out;

  switch (mode) {
    case Mode::S1: {
      g.interventions().for_each([&](NodeIndex i) {
        for (NodeIndex t : g.children(i))
          if (g.has_directed(y, t) && is_predictor(g, t))
            out.push_back({i, StructureKind::SubDistrict, {single(g, t)}});
      });
      break;
    }
    case Mode::S2:
    case Mode::S5: {
      node_chains(g, y, g.children(y), StructureKind::SubDistrict, out);
      if (mode == Mode::S5) node_chains(g, y, g.spouses(y), StructureKind::District, out);
      break;
    }
    case Mode::S3: {
      g.interventions().for_each([&](NodeIndex i) {
        std::set<std::size_t> done;
        for (NodeIndex t : g.children(i)) {
          const NodeSet& comp = g.scc_members(g.scc_id(t));
          if (comp == y_scc || !done.insert(g.scc_id(t)).second) continue;
          if ((children(g, ys) & comp).empty()) continue;
          out.push_back({i, StructureKind::ComponentDistrict, {comp}});
        }
      });
      break;
    }
    case Mode::S4: {
      // Chains of pairwise-distinct SCCs, starting from one holding a child of Y.
      std::set<std::size_t> starts;
      for (NodeIndex c : g.children(y))
        if (!g.same_scc(c, y) && is_predictor(g, c)) starts.insert(g.scc_id(c));
      for (std::size_t first : starts) {
        std::vector<std::size_t> chain{first};
        std::set<std::size_t> used{first, g.scc_id(y)};
        auto dfs = [&](auto&& self) -> void {
          const NodeSet& last = g.scc_members(chain.back());
          std::set<NodeIndex> sources;
          last.for_each([&](NodeIndex v) {
            for (NodeIndex p : g.parents(v))
              if (g.role(p) == NodeRole::Intervention) sources.insert(p);
          });
          for (NodeIndex i : sources) {
            InterventionStructure s{i, StructureKind::ComponentDistrict, {}};
            for (auto it = chain.rbegin(); it != chain.rend(); ++it) s.sequence.push_back(g.scc_members(*it));
            out.push_back(std::move(s));
          }
          std::set<std::size_t> next;
          last.for_each([&](NodeIndex v) {
            for (NodeIndex w : g.spouses(v))
              if (is_predictor(g, w) && !used.count(g.scc_id(w))) next.insert(g.scc_id(w));
          });
          for (std::size_t id : next) {
            chain.push_back(id);
            used.insert(id);
            self(self);
            used.erase(id);
            chain.pop_back();
          }
        };
        dfs(dfs);
      }
      break;
    }
  }
  sort_structures(out);
  return out;
}

}  // namespace detail

std::vector<InterventionStructure> enumerate_structures(const MixedGraph& g, Mode mode) {
  require_setting(g, mode);
  return detail::enumerate_structures_unchecked(g, mode);
}

std::vector<Collider> structure_colliders(const MixedGraph& g, const InterventionStructure& s,
                                          bool allow_empty) {
  const NodeIndex y = g.response();
  const NodeSet ys = single(g, y);
  const NodeSet toward_y_end = s.kind == StructureKind::ComponentDistrict ? scc(g, ys) : ys;
  const NodeSet intervention = single(g, s.intervention);
  const std::size_t n = s.sequence.size();

  std::vector<Collider> out;
  // sequence[idx] is i_k with k = n - idx; walk from Y outwards.
  for (std::size_t k = 1; k <= n; ++k) {
    const NodeSet& e = s.sequence[n - k];
    const NodeSet& toward_y = k == 1 ? toward_y_end : s.sequence[n - k + 1];
    const NodeSet& away = k == n ? intervention : s.sequence[n - k - 1];
    if (points_into(g, e, toward_y) || points_into(g, e, away)) continue;
    if (descendants(g, e).contains(y)) continue;
    out.push_back({e, k});
  }
  if (out.empty() && !allow_empty) {
    throw Error(ErrorCode::NoColliderFound, "no collider on intervened structure " + describe(g, s));
  }
  return out;
}

std::vector<ColliderChoice> collider_choices(const MixedGraph& g, Mode mode, Policy policy) {
  const auto structures = enumerate_structures(g, mode);
  std::vector<std::vector<Collider>> colliders;
  for (const auto& s : structures) colliders.push_back(structure_colliders(g, s));

  const ChoiceKind kind = choice_kind(mode);
  if (kind == ChoiceKind::Forced) {
    ColliderChoice c{kind, {}};
    for (const auto& cs : colliders) {
      std::vector<NodeSet> per;
      for (const auto& col : cs) per.push_back(col.members);
      c.picks.push_back(std::move(per));
    }
    return {c};
  }

  auto sort_by_union = [&](std::vector<ColliderChoice>& v) {
    std::sort(v.begin(), v.end(), [&](const ColliderChoice& a, const ColliderChoice& b) {
      return a.picked(g.size()) < b.picked(g.size());
    });
  };

  switch (policy) {
    case Policy::FarthestFromY: {
      ColliderChoice c{kind, {}};
      for (const auto& cs : colliders) c.picks.push_back({cs.back().members});
      return {c};
    }
    case Policy::SingletonsOnly: {
      // Products are deduplicated by the union of picks as they are built.
      constexpr std::size_t kLimit = std::size_t{1} << 14;
      std::map<NodeSet, ColliderChoice> partial;
      partial.emplace(g.empty_set(), ColliderChoice{kind, {}});
      for (const auto& cs : colliders) {
        std::map<NodeSet, ColliderChoice> next;
        for (const auto& [u, choice] : partial) {
          for (const auto& col : cs) {
            ColliderChoice extended = choice;
            extended.picks.push_back({col.members});
            next.emplace(u | col.members, std::move(extended));
          }
        }
        if (next.size() > kLimit) {
          throw Error(ErrorCode::TooManyColliders, "singleton collider choices exceed enumeration limit");
        }
        partial = std::move(next);
      }
      std::vector<ColliderChoice> out;
      for (auto& [_, c] : partial) out.push_back(std::move(c));
      return out;
    }
    case Policy::AllChoices: {
      // Distinct unions of per-structure non-empty subsets are exactly the
      // subsets of all colliders that hit every structure.
      std::vector<NodeSet> universe;
      for (const auto& cs : colliders)
        for (const auto& col : cs)
          if (std::find(universe.begin(), universe.end(), col.members) == universe.end())
            universe.push_back(col.members);
      std::sort(universe.begin(), universe.end());
      if (universe.size() > 12) {
        throw Error(ErrorCode::TooManyColliders,
                    std::to_string(universe.size()) + " distinct colliders exceed the limit of 12");
      }
      std::vector<ColliderChoice> out;
      const std::uint32_t total = std::uint32_t{1} << universe.size();
      for (std::uint32_t mask = 0; mask < total; ++mask) {
        ColliderChoice c{kind, {}};
        bool hits_all = true;
        for (const auto& cs : colliders) {
          std::vector<NodeSet> per;
          for (const auto& col : cs) {
            const auto pos = std::find(universe.begin(), universe.end(), col.members) - universe.begin();
            if ((mask >> pos) & 1U) per.push_back(col.members);
          }
          if (per.empty()) {
            hits_all = false;
            break;
          }
          c.picks.push_back(std::move(per));
        }
        if (hits_all) out.push_back(std::move(c));
      }
      sort_by_union(out);
      return out;
    }
  }
  return {};
}

InterventionSplit intervention_set(const MixedGraph& g, Mode mode, const ColliderChoice& choice) {
  const auto structures = enumerate_structures(g, mode);
  std::vector<std::vector<Collider>> colliders;
  for (const auto& s : structures) colliders.push_back(structure_colliders(g, s));

  ColliderChoice effective = choice;
  if (choice_kind(mode) == ChoiceKind::Forced) {
    effective = collider_choices(g, mode, Policy::FarthestFromY).front();
  } else {
    if (choice.picks.size() != structures.size()) {
      throw Error(ErrorCode::InvalidChoice, "choice covers " + std::to_string(choice.picks.size()) +
                                                " structures, graph has " +
                                                std::to_string(structures.size()));
    }
    for (std::size_t h = 0; h < structures.size(); ++h) {
      if (choice.picks[h].empty()) {
        throw Error(ErrorCode::InvalidChoice, "no collider picked on " + describe(g, structures[h]));
      }
      for (const auto& p : choice.picks[h]) {
        const bool known = std::any_of(colliders[h].begin(), colliders[h].end(),
                                       [&](const Collider& c) { return c.members == p; });
        if (!known) {
          throw Error(ErrorCode::InvalidChoice,
                      set_text(g, p) + " is not a collider of " + describe(g, structures[h]));
        }
      }
    }
  }
  InterventionSplit split{g.empty_set(), g.empty_set()};
  for (const auto& per : effective.picks)
    for (const auto& c : per) split.n_int |= closure(g, c);
  split.n_int &= g.predictors();
  split.n_minus_int = g.predictors() - split.n_int;
  return split;
}

std::optional<NodeSet> StabilityResult::blanket() const {
  if (unique == Uniqueness::Yes) return frontier;
  return std::nullopt;
}

namespace {

StabilityResult frontier_for(const MixedGraph& g, Mode mode, const ColliderChoice& choice,
                             const InterventionSplit& split) {
  StabilityResult r;
  r.mode = mode;
  r.n_int = split.n_int;
  r.n_minus_int = split.n_minus_int;
  r.choice = choice;
  const NodeSet keep = split.n_minus_int | single(g, g.response()) | g.interventions();
  const MixedGraph sub = induced_subgraph(g, keep);
  r.frontier = g.translate(markov_blanket(sub, frontier_family(mode)).blanket, sub);
  r.all_frontiers = {r.frontier};
  r.unique = choice_kind(mode) == ChoiceKind::Forced ? Uniqueness::Yes : Uniqueness::Unknown;
  return r;
}

}  // namespace

StabilityResult stable_frontier(const MixedGraph& g, Mode mode, const ColliderChoice& choice) {
  ColliderChoice effective = choice;
  if (choice_kind(mode) == ChoiceKind::Forced) {
    effective = collider_choices(g, mode, Policy::FarthestFromY).front();
  }
  return frontier_for(g, mode, effective, intervention_set(g, mode, effective));
}

UniquenessCheck uniqueness_condition(const MixedGraph& g, Mode mode) {
  if (mode == Mode::S5) {
    throw Error(ErrorCode::InvalidArgument, "uniqueness condition is defined for s2 and s4 only");
  }
  const auto structures = enumerate_structures(g, mode);
  if (mode == Mode::S1 || mode == Mode::S3) return {true, std::nullopt};

  std::vector<std::vector<Collider>> colliders;
  std::vector<NodeSet> single_closures;
  for (const auto& s : structures) {
    colliders.push_back(structure_colliders(g, s));
    if (colliders.back().size() == 1) single_closures.push_back(closure(g, colliders.back().front().members));
  }
  for (const auto& cs : colliders) {
    for (std::size_t a = 0; a < cs.size(); ++a) {
      for (std::size_t b = a + 1; b < cs.size(); ++b) {
        const bool covered =
            std::any_of(single_closures.begin(), single_closures.end(), [&](const NodeSet& cl) {
              return cl.intersects(cs[a].members) && cl.intersects(cs[b].members);
            });
        if (!covered) {
          // Report the pair farthest-first, as it appears along the chain.
          return {false, std::make_pair(cs[b].members, cs[a].members)};
        }
      }
    }
  }
  return {true, std::nullopt};
}

StabilityResult stable_blanket(const MixedGraph& g, Mode mode) {
  require_setting(g, mode);
  const ColliderChoice farthest = collider_choices(g, mode, Policy::FarthestFromY).front();
  StabilityResult best = frontier_for(g, mode, farthest, intervention_set(g, mode, farthest));
  if (choice_kind(mode) == ChoiceKind::Forced) return best;

  if (mode != Mode::S5 && uniqueness_condition(g, mode).holds) {
    best.unique = Uniqueness::Yes;
    return best;
  }
  std::vector<ColliderChoice> choices;
  try {
    choices = collider_choices(g, mode, Policy::SingletonsOnly);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::TooManyColliders) throw;
    best.unique = Uniqueness::Unknown;
    return best;
  }
  std::set<NodeSet> frontiers;
  for (const auto& c : choices) {
    frontiers.insert(frontier_for(g, mode, c, intervention_set(g, mode, c)).frontier);
  }
  best.all_frontiers.assign(frontiers.begin(), frontiers.end());
  best.unique = frontiers.size() == 1 ? Uniqueness::Yes : Uniqueness::No;
  return best;
}

bool verify_intervention_stable(const MixedGraph& g, const NodeSet& s, Criterion c) {
  if (s.universe() != g.size()) throw Error(ErrorCode::UnknownNode, "set does not belong to this graph");
  if (!s.is_subset_of(g.predictors())) {
    throw Error(ErrorCode::InvalidArgument, "stable sets must contain predictors only");
  }
  const NodeSet ys = single(g, g.response());
  bool stable = true;
  g.interventions().for_each([&](NodeIndex i) {
    if (stable && !separated(g, single(g, i), ys, s, c)) stable = false;
  });
  return stable;
}

}  // namespace blanketlab
