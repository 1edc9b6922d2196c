#include "blanketlab/blanket.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>

#include "blanketlab/error.hpp"
#include "blanketlab/relations.hpp"

namespace blanketlab {

std::string_view to_string(Family f) {
  switch (f) {
    case Family::ADMG: return "admg";
    case Family::DG: return "dg";
    case Family::DMG: return "dmg";
  }
  return "admg";
}

std::optional<Family> parse_family(std::string_view text) {
  if (text == "admg") return Family::ADMG;
  if (text == "dg") return Family::DG;
  if (text == "dmg") return Family::DMG;
  return std::nullopt;
}

Criterion criterion_for(Family f) { return f == Family::ADMG ? Criterion::M : Criterion::Sigma; }

bool family_accepts(Family f, GraphClass cls) {
  switch (f) {
    case Family::ADMG: return cls == GraphClass::DAG || cls == GraphClass::ADMG;
    case Family::DG: return cls == GraphClass::DAG || cls == GraphClass::DG;
    case Family::DMG: return true;
  }
  return false;
}

BlanketResult markov_blanket(const MixedGraph& g, Family family) {
  if (!family_accepts(family, g.graph_class())) {
    throw Error(ErrorCode::FamilyMismatch, std::string("formula ") + std::string(to_string(family)) +
                                               " does not apply to a " +
                                               std::string(to_string(g.graph_class())));
  }
  const NodeIndex y = g.response();
  const NodeSet ys = single(g, y);

  Relation comp = Relation::District;
  std::string name = "dis";
  if (family == Family::DG) {
    comp = Relation::Scc;
    name = "scc";
  } else if (family == Family::DMG) {
    comp = Relation::Relatives;
    name = "re";
  }
  const NodeSet own = relation(g, comp, ys);
  const NodeSet of_children = relation(g, comp, children(g, ys));

  BlanketResult r;
  r.criterion = criterion_for(family);
  r.formula_parts = {
      {"pa(" + name + "(Y))", parents(g, own)},
      {name + "(Y)", own},
      {name + "(ch(Y))", of_children},
      {"pa(" + name + "(ch(Y)))", parents(g, of_children)},
  };
  r.blanket = g.empty_set();
  for (const auto& [_, part] : r.formula_parts) r.blanket |= part;
  r.blanket &= g.predictors();
  return r;
}

std::vector<NodeSet> minimal_blanket_oracle(const MixedGraph& g, Criterion c,
                                            const NodeSet& universe) {
  if (universe.universe() != g.size()) {
    throw Error(ErrorCode::UnknownNode, "universe does not belong to this graph");
  }
  if (!universe.is_subset_of(g.predictors())) {
    throw Error(ErrorCode::InvalidArgument, "oracle universe must contain predictors only");
  }
  const std::vector<NodeIndex> u = universe.elements();
  if (u.size() > 20) {
    throw Error(ErrorCode::UniverseTooLarge,
                "oracle universe has " + std::to_string(u.size()) + " nodes (limit 20)");
  }
  const NodeIndex y = g.response();
  const NodeSet ys = single(g, y);
  const std::uint32_t total = std::uint32_t{1} << u.size();

  auto separating = [&](std::uint32_t mask) {
    NodeSet s = g.empty_set();
    for (std::size_t k = 0; k < u.size(); ++k)
      if ((mask >> k) & 1U) s.insert(u[k]);
    for (std::size_t k = 0; k < u.size(); ++k) {
      if ((mask >> k) & 1U) continue;
      if (!separated(g, single(g, u[k]), ys, s, c)) return std::optional<NodeSet>{};
    }
    return std::optional<NodeSet>{s};
  };

  for (std::size_t size = 0; size <= u.size(); ++size) {
    std::vector<NodeSet> found;
    for (std::uint32_t mask = 0; mask < total; ++mask) {
      if (static_cast<std::size_t>(std::popcount(mask)) != size) continue;
      if (auto s = separating(mask)) found.push_back(*s);
    }
    if (!found.empty()) {
      std::sort(found.begin(), found.end());
      return found;
    }
  }
  return {};  // unreachable: the full universe always qualifies
}

}  // namespace blanketlab
