#include "cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <optional>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "blanketlab/blanketlab.hpp"

namespace blanketlab::cli {

namespace {

using nlohmann::json;

const std::set<std::string> kCommands = {"validate", "project", "mb", "stable", "sep", "oracle", "dot"};

json labels(const MixedGraph& g, const NodeSet& s) { return g.labels_of(s); }

std::string braces(const MixedGraph& g, const NodeSet& s) {
  std::string out = "{";
  const auto l = g.labels_of(s);
  for (std::size_t k = 0; k < l.size(); ++k) out += (k ? ", " : "") + l[k];
  return out + "}";
}

// Accepts "X1,X2" as well as repeated values.
NodeSet parse_set(const MixedGraph& g, const std::vector<std::string>& items) {
  std::vector<std::string> labels;
  for (const auto& item : items) {
    std::stringstream ss(item);
    std::string part;
    while (std::getline(ss, part, ',')) {
      if (!part.empty()) labels.push_back(part);
    }
  }
  return g.set_of(labels);
}

std::uint64_t default_seed() {
  if (const char* env = std::getenv("BLANKETLAB_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw Error(ErrorCode::InvalidArgument, "BLANKETLAB_SEED must be a non-negative integer");
    }
  }
  return 0;
}

struct Options {
  std::string file;
  bool as_json = false;
  // validate
  std::string setting = "s2";
  bool assert_valid = false;
  // project
  std::vector<std::string> observed;
  // mb
  std::string family;
  // stable
  std::string mode = "s2";
  std::string policy = "farthest";
  bool assert_stable = false;
  // sep
  std::vector<std::string> a, b, z;
  std::string criterion = "m";
  bool use_oracle = false;
  bool use_fast = false;
  bool show_paths = false;
  // oracle
  std::size_t trials = 20;
  std::optional<std::uint64_t> seed;
  double tol = 1e-7;
};

int cmd_validate(const MixedGraph& g, const Options& o, std::ostream& out) {
  const auto setting = parse_setting(o.setting);
  if (!setting) throw Error(ErrorCode::InvalidArgument, "unknown setting " + o.setting);
  const ValidationReport r = validate_setting(g, *setting);
  if (o.as_json) {
    json v = json::array();
    for (const auto& viol : r.violations) {
      json w = json::array();
      for (NodeIndex i : viol.witnesses) w.push_back(g.label(i));
      v.push_back({{"rule", viol.rule}, {"message", viol.message}, {"witnesses", w}});
    }
    out << json{{"setting", o.setting}, {"ok", r.ok}, {"violations", v}}.dump(2) << "\n";
  } else {
    out << "setting " << o.setting << ": " << (r.ok ? "ok" : "violated") << "\n";
    for (const auto& viol : r.violations) {
      out << "  " << viol.rule << ": " << viol.message;
      if (!viol.witnesses.empty()) {
        out << " (";
        for (std::size_t k = 0; k < viol.witnesses.size(); ++k)
          out << (k ? ", " : "") << g.label(viol.witnesses[k]);
        out << ")";
      }
      out << "\n";
    }
  }
  return (o.assert_valid && !r.ok) ? kNegative : kOk;
}

int cmd_project(const MixedGraph& g, const Options& o, std::ostream& out) {
  const MixedGraph p = o.observed.empty() ? latent_project(g) : latent_project(g, parse_set(g, o.observed));
  out << write_graph(p);
  return kOk;
}

Family default_family(const MixedGraph& g) {
  switch (g.graph_class()) {
    case GraphClass::DAG:
    case GraphClass::ADMG: return Family::ADMG;
    case GraphClass::DG: return Family::DG;
    case GraphClass::DMG: return Family::DMG;
  }
  return Family::DMG;
}

int cmd_mb(const MixedGraph& g, const Options& o, std::ostream& out) {
  Family family = default_family(g);
  if (!o.family.empty()) {
    const auto f = parse_family(o.family);
    if (!f) throw Error(ErrorCode::InvalidArgument, "unknown family " + o.family);
    family = *f;
  }
  const BlanketResult r = markov_blanket(g, family);
  if (o.as_json) {
    json parts = json::object();
    for (const auto& [name, set] : r.formula_parts) parts[name] = labels(g, set);
    out << json{{"family", to_string(family)},
                {"criterion", to_string(r.criterion)},
                {"blanket", labels(g, r.blanket)},
                {"parts", parts}}
               .dump(2)
        << "\n";
  } else {
    out << "family " << to_string(family) << " (" << to_string(r.criterion) << "-separation)\n";
    for (const auto& [name, set] : r.formula_parts) out << "  " << name << " = " << braces(g, set) << "\n";
    out << "MB(Y) = " << braces(g, r.blanket) << "\n";
  }
  return kOk;
}

json choice_json(const MixedGraph& g, const ColliderChoice& c) {
  json picks = json::array();
  for (const auto& per : c.picks) {
    json p = json::array();
    for (const auto& col : per) p.push_back(labels(g, col));
    picks.push_back(p);
  }
  return picks;
}

int cmd_stable(const MixedGraph& g, const Options& o, std::ostream& out) {
  const auto mode = parse_setting(o.mode);
  if (!mode) throw Error(ErrorCode::InvalidArgument, "unknown mode " + o.mode);
  const auto policy = parse_policy(o.policy);
  if (!policy) throw Error(ErrorCode::InvalidArgument, "unknown policy " + o.policy);

  const auto structures = enumerate_structures(g, *mode);
  const StabilityResult sb = stable_blanket(g, *mode);
  const auto choices = collider_choices(g, *mode, *policy);

  json js = json::array();
  for (const auto& s : structures) {
    json seq = json::array();
    for (const auto& e : s.sequence) seq.push_back(labels(g, e));
    json cols = json::array();
    for (const auto& c : structure_colliders(g, s)) cols.push_back(labels(g, c.members));
    js.push_back({{"intervention", g.label(s.intervention)},
                  {"kind", to_string(s.kind)},
                  {"sequence", seq},
                  {"colliders", cols}});
  }
  json jc = json::array();
  std::vector<StabilityResult> per_choice;
  for (const auto& c : choices) {
    per_choice.push_back(stable_frontier(g, *mode, c));
    const auto& r = per_choice.back();
    jc.push_back({{"picks", choice_json(g, c)},
                  {"n_int", labels(g, r.n_int)},
                  {"n_minus_int", labels(g, r.n_minus_int)},
                  {"frontier", labels(g, r.frontier)}});
  }
  json frontiers = json::array();
  for (const auto& f : sb.all_frontiers) frontiers.push_back(labels(g, f));
  json unique = sb.unique == Uniqueness::Unknown ? json(nullptr) : json(sb.unique == Uniqueness::Yes);
  json blanket = sb.blanket() ? labels(g, *sb.blanket()) : json(nullptr);

  if (o.as_json) {
    out << json{{"mode", o.mode},
                {"policy", o.policy},
                {"criterion", to_string(criterion_for(*mode))},
                {"structures", js},
                {"choices", jc},
                {"frontiers", frontiers},
                {"unique", unique},
                {"stable_blanket", blanket}}
               .dump(2)
        << "\n";
  } else {
    out << "mode " << o.mode << ", " << structures.size() << " intervened structure(s)\n";
    for (const auto& s : structures) {
      out << "  " << to_string(s.kind) << " " << describe(g, s) << " colliders:";
      for (const auto& c : structure_colliders(g, s)) out << " " << braces(g, c.members);
      out << "\n";
    }
    out << "choices (" << o.policy << "):\n";
    for (const auto& r : per_choice) {
      out << "  picks " << choice_json(g, r.choice).dump() << ": N^int = " << braces(g, r.n_int)
          << ", frontier = " << braces(g, r.frontier) << "\n";
    }
    out << "distinct frontiers:";
    for (const auto& f : sb.all_frontiers) out << " " << braces(g, f);
    out << "\nunique: " << to_string(sb.unique) << "\n";
    if (sb.blanket()) out << "SB(Y) = " << braces(g, *sb.blanket()) << "\n";
  }
  return (o.assert_stable && sb.unique != Uniqueness::Yes) ? kNegative : kOk;
}

int cmd_sep(const MixedGraph& g, const Options& o, std::ostream& out) {
  const auto c = parse_criterion(o.criterion);
  if (!c) throw Error(ErrorCode::InvalidArgument, "unknown criterion " + o.criterion);
  const NodeSet a = parse_set(g, o.a);
  const NodeSet b = parse_set(g, o.b);
  const NodeSet z = parse_set(g, o.z);
  const bool sep = o.use_oracle ? separated_oracle(g, a, b, z, *c) : separated(g, a, b, z, *c);

  std::vector<std::string> open_paths;
  if (o.show_paths) {
    a.for_each([&](NodeIndex x) {
      b.for_each([&](NodeIndex y) {
        for (const auto& p : enumerate_paths(g, x, y))
          if (!is_blocked(g, p, z, *c)) open_paths.push_back(format_path(g, p));
      });
    });
  }
  if (o.as_json) {
    json doc{{"criterion", to_string(*c)},
             {"a", labels(g, a)},
             {"b", labels(g, b)},
             {"z", labels(g, z)},
             {"separated", sep},
             {"engine", o.use_oracle ? "oracle" : "fast"}};
    if (o.show_paths) doc["open_paths"] = open_paths;
    out << doc.dump(2) << "\n";
  } else {
    out << braces(g, a) << (sep ? " is " : " is not ") << to_string(*c) << "-separated from "
        << braces(g, b) << " given " << braces(g, z) << "\n";
    for (const auto& p : open_paths) out << "  open: " << p << "\n";
  }
  return kOk;
}

int cmd_oracle(const MixedGraph& g, const Options& o, std::ostream& out) {
  const MixedGraph full = g.bidirected_count() > 0 ? expand_bidirected(g) : g;
  const std::uint64_t seed = o.seed ? *o.seed : default_seed();
  const MarkovReport r = markov_check(full, o.trials, seed, o.tol);
  if (o.as_json) {
    json v = json::array();
    for (const auto& viol : r.violations) {
      v.push_back({{"trial", viol.trial},
                   {"a", full.label(viol.a)},
                   {"b", full.label(viol.b)},
                   {"z", labels(full, viol.z)},
                   {"value", viol.value},
                   {"source", viol.from_projection ? "projection" : "graph"}});
    }
    out << json{{"trials", r.trials},
                {"seed", seed},
                {"tol", o.tol},
                {"checked", {{"graph", r.checked}, {"projection", r.projection_checked}}},
                {"max_abs_partial_correlation", {{"graph", r.max_abs}, {"projection", r.projection_max_abs}}},
                {"skipped", r.skipped},
                {"violations", v},
                {"ok", r.ok()}}
               .dump(2)
        << "\n";
  } else {
    out << "trials " << r.trials << ", seed " << seed << ", tol " << o.tol << "\n";
    out << "separated triples checked: " << r.checked << " (graph), " << r.projection_checked
        << " (projection), skipped " << r.skipped << "\n";
    out << "max |partial correlation|: " << r.max_abs << " (graph), " << r.projection_max_abs
        << " (projection)\n";
    out << (r.ok() ? "ok" : "violations: " + std::to_string(r.violations.size())) << "\n";
  }
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  if (!args.empty() && !args.front().empty() && args.front()[0] != '-' && !kCommands.count(args.front())) {
    err << "code=UnknownCommand unknown command '" << args.front() << "'\n";
    return kUsage;
  }

  CLI::App app{"Markov blankets and intervention-stable blankets of mixed graphs", "blanketlab"};
  app.require_subcommand(1);
  Options o;

  auto file_arg = [&](CLI::App* cmd) {
    cmd->add_option("graph", o.file, "graph file")->required()->check(CLI::ExistingFile);
  };
  auto json_flag = [&](CLI::App* cmd) { cmd->add_flag("--json", o.as_json, "emit one JSON document"); };

  auto* validate = app.add_subcommand("validate", "check the assumptions of a setting");
  validate->add_option("--setting", o.setting, "s1, s2, s3, s4 or s5")->check(CLI::IsMember({"s1", "s2", "s3", "s4", "s5"}));
  validate->add_flag("--assert-valid", o.assert_valid, "exit 1 when the setting is violated");
  json_flag(validate);
  file_arg(validate);

  auto* project = app.add_subcommand("project", "marginalise hidden nodes");
  project->add_option("--observed", o.observed, "nodes to keep (default: all non-hidden)");
  file_arg(project);

  auto* mb = app.add_subcommand("mb", "closed-form Markov blanket of Y");
  mb->add_option("--family", o.family, "admg, dg or dmg (default: by graph class)")
      ->check(CLI::IsMember({"admg", "dg", "dmg"}));
  json_flag(mb);
  file_arg(mb);

  auto* stable = app.add_subcommand("stable", "stable frontiers and blanket of Y");
  stable->add_option("--mode", o.mode, "s1, s2, s3, s4 or s5")->check(CLI::IsMember({"s1", "s2", "s3", "s4", "s5"}));
  stable->add_option("--policy", o.policy, "all, farthest or singletons")
      ->check(CLI::IsMember({"all", "farthest", "singletons"}));
  stable->add_flag("--assert-stable", o.assert_stable, "exit 1 unless the stable blanket is unique");
  json_flag(stable);
  file_arg(stable);

  auto* sep = app.add_subcommand("sep", "separation query");
  sep->add_option("--a,-a", o.a, "first node set")->required();
  sep->add_option("--b,-b", o.b, "second node set")->required();
  sep->add_option("--z,-z", o.z, "conditioning set");
  sep->add_option("--criterion", o.criterion, "d, m or sigma")->check(CLI::IsMember({"d", "m", "sigma"}));
  auto* oracle_flag = sep->add_flag("--oracle", o.use_oracle, "use the exhaustive path oracle");
  auto* fast_flag = sep->add_flag("--fast", o.use_fast, "use the reachability engine (default)");
  oracle_flag->excludes(fast_flag);
  sep->add_flag("--paths", o.show_paths, "list open paths");
  json_flag(sep);
  file_arg(sep);

  auto* oracle = app.add_subcommand("oracle", "exact linear-Gaussian Markov check");
  oracle->add_option("--trials", o.trials, "weight draws")->check(CLI::PositiveNumber);
  oracle->add_option("--seed", o.seed, "base seed (default: BLANKETLAB_SEED or 0)");
  oracle->add_option("--tol", o.tol, "tolerance on |partial correlation|")->check(CLI::PositiveNumber);
  json_flag(oracle);
  file_arg(oracle);

  auto* dot = app.add_subcommand("dot", "Graphviz rendering");
  file_arg(dot);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ExcludesError& e) {
    err << "code=FlagConflict " << e.what() << "\n";
    return kUsage;
  } catch (const CLI::ParseError& e) {
    err << "code=UsageError " << e.what() << "\n";
    return kUsage;
  }

  try {
    const MixedGraph g = read_graph_file(o.file);
    if (validate->parsed()) return cmd_validate(g, o, out);
    if (project->parsed()) return cmd_project(g, o, out);
    if (mb->parsed()) return cmd_mb(g, o, out);
    if (stable->parsed()) return cmd_stable(g, o, out);
    if (sep->parsed()) return cmd_sep(g, o, out);
    if (oracle->parsed()) return cmd_oracle(g, o, out);
    if (dot->parsed()) {
      out << to_dot(g);
      return kOk;
    }
  } catch (const Error& e) {
    err << "code=" << to_string(e.code()) << " " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

}  // namespace blanketlab::cli
