#include "blanketlab/validation.hpp"

#include "blanketlab/error.hpp"
#include "blanketlab/relations.hpp"
#include "blanketlab/stability.hpp"

namespace blanketlab {

std::string_view to_string(Setting s) {
  switch (s) {
    case Setting::S1: return "s1";
    case Setting::S2: return "s2";
    case Setting::S3: return "s3";
    case Setting::S4: return "s4";
    case Setting::S5: return "s5";
  }
  return "s1";
}

std::optional<Setting> parse_setting(std::string_view text) {
  for (Setting s : {Setting::S1, Setting::S2, Setting::S3, Setting::S4, Setting::S5}) {
    if (to_string(s) == text) return s;
  }
  return std::nullopt;
}

namespace {

bool class_allowed(Setting s, GraphClass cls) {
  switch (s) {
    case Setting::S1: return cls == GraphClass::DAG;
    case Setting::S2:
    case Setting::S5: return cls == GraphClass::DAG || cls == GraphClass::ADMG;
    case Setting::S3: return cls == GraphClass::DAG || cls == GraphClass::DG;
    case Setting::S4: return true;
  }
  return false;
}

}  // namespace

ValidationReport validate_setting(const MixedGraph& g, Setting setting) {
  const NodeIndex y = g.response();
  ValidationReport report;
  report.setting = setting;
  auto add = [&](std::string rule, std::string message, std::vector<NodeIndex> witnesses) {
    report.violations.push_back({std::move(rule), std::move(message), std::move(witnesses)});
  };

  const NodeSet interventions = g.interventions();
  interventions.for_each([&](NodeIndex i) {
    for (NodeIndex p : g.parents(i))
      add("intervention-not-source", "intervention " + g.label(i) + " has parent " + g.label(p), {p, i});
    for (NodeIndex s : g.spouses(i))
      add("intervention-bidirected", "intervention " + g.label(i) + " has bidirected edge to " + g.label(s),
          {i, s});
  });

  const bool class_ok = class_allowed(setting, g.graph_class());
  if (!class_ok) {
    add("graph-class",
        "graph class " + std::string(to_string(g.graph_class())) + " not allowed in setting " +
            std::string(to_string(setting)),
        {});
  }
  g.with_role(NodeRole::Hidden).for_each([&](NodeIndex h) {
    add("hidden-node", "hidden node " + g.label(h) + " must be projected out first", {h});
  });

  // Interventions may not point into the protected region around Y.
  const NodeSet ys = single(g, y);
  auto forbid = [&](const NodeSet& region, const std::string& rule, const std::string& text) {
    interventions.for_each([&](NodeIndex i) {
      for (NodeIndex t : g.children(i))
        if (region.contains(t)) add(rule, "intervention edge into " + text, {i, t});
    });
  };
  switch (setting) {
    case Setting::S1:
    case Setting::S5: forbid(ys, "intervention-into-response", "Y"); break;
    case Setting::S2: forbid(district(g, ys), "intervention-into-district", "dis(Y)"); break;
    case Setting::S3: forbid(scc(g, ys), "intervention-into-scc", "scc(Y)"); break;
    case Setting::S4: forbid(relatives(g, ys), "intervention-into-relatives", "re(Y)"); break;
  }

  if (setting == Setting::S5 && class_ok) {
    for (const auto& s : detail::enumerate_structures_unchecked(g, Setting::S5)) {
      if (structure_colliders(g, s, /*allow_empty=*/true).empty()) {
        std::vector<NodeIndex> w{s.intervention};
        for (const auto& e : s.sequence) e.for_each([&](NodeIndex v) { w.push_back(v); });
        add("structure-without-collider", "intervened structure " + describe(g, s) + " has no collider",
            std::move(w));
      }
    }
  }

  report.ok = report.violations.empty();
  return report;
}

void require_setting(const MixedGraph& g, Setting setting) {
  const ValidationReport r = validate_setting(g, setting);
  if (!r.ok) {
    throw Error(ErrorCode::SettingViolation, "setting " + std::string(to_string(setting)) +
                                                 " violated: " + r.violations.front().message);
  }
}

}  // namespace blanketlab
