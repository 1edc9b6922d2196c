#include "blanketlab/separation.hpp"

#include <algorithm>
#include <array>
#include <deque>

#include "blanketlab/error.hpp"
#include "blanketlab/relations.hpp"

namespace blanketlab {

std::string_view to_string(Criterion c) {
  switch (c) {
    case Criterion::D: return "d";
    case Criterion::M: return "m";
    case Criterion::Sigma: return "sigma";
  }
  return "m";
}

std::optional<Criterion> parse_criterion(std::string_view text) {
  if (text == "d") return Criterion::D;
  if (text == "m") return Criterion::M;
  if (text == "sigma") return Criterion::Sigma;
  return std::nullopt;
}

bool path_less(const Path& a, const Path& b) {
  if (a.nodes.size() != b.nodes.size()) return a.nodes.size() < b.nodes.size();
  if (a.nodes != b.nodes) return a.nodes < b.nodes;
  return a.steps < b.steps;
}

std::string format_path(const MixedGraph& g, const Path& p) {
  std::string out;
  for (std::size_t k = 0; k < p.nodes.size(); ++k) {
    if (k > 0) {
      switch (p.steps[k - 1]) {
        case StepKind::Forward: out += " -> "; break;
        case StepKind::Backward: out += " <- "; break;
        case StepKind::Bi: out += " <-> "; break;
      }
    }
    out += g.label(p.nodes[k]);
  }
  return out;
}

namespace {

struct Step {
  NodeIndex to;
  StepKind kind;
};

// All single steps out of v, in (neighbour, kind) order.
std::vector<Step> steps_from(const MixedGraph& g, NodeIndex v) {
  std::vector<Step> out;
  for (NodeIndex w : g.children(v)) out.push_back({w, StepKind::Forward});
  for (NodeIndex w : g.parents(v)) out.push_back({w, StepKind::Backward});
  for (NodeIndex w : g.spouses(v)) out.push_back({w, StepKind::Bi});
  std::sort(out.begin(), out.end(), [](const Step& x, const Step& y) {
    return x.to != y.to ? x.to < y.to : x.kind < y.kind;
  });
  return out;
}

bool step_exists(const MixedGraph& g, NodeIndex a, NodeIndex b, StepKind k) {
  switch (k) {
    case StepKind::Forward: return g.has_directed(a, b);
    case StepKind::Backward: return g.has_directed(b, a);
    case StepKind::Bi: return g.has_bidirected(a, b);
  }
  return false;
}

// Arrowhead at the far end of a step (the node being entered).
bool head_at_end(StepKind k) { return k != StepKind::Backward; }
// Arrowhead at the near end of a step (the node being left).
bool head_at_start(StepKind k) { return k != StepKind::Forward; }

struct BlockContext {
  const MixedGraph& g;
  const NodeSet& z;
  NodeSet z_or_an;
  Criterion c;
};

// Whether interior node v, entered from u by `in` and left to w by `out`,
// blocks the path.
bool interior_blocks(const BlockContext& ctx, NodeIndex u, StepKind in, NodeIndex v,
                     StepKind out, NodeIndex w) {
  const bool collider = head_at_end(in) && head_at_start(out);
  if (collider) return !ctx.z_or_an.contains(v);
  if (!ctx.z.contains(v)) return false;
  if (ctx.c != Criterion::Sigma) return true;
  const bool tail_left_leaves = !head_at_end(in) && !ctx.g.same_scc(u, v);
  const bool tail_right_leaves = !head_at_start(out) && !ctx.g.same_scc(v, w);
  return tail_left_leaves || tail_right_leaves;
}

void check_criterion(const MixedGraph& g, Criterion c) {
  if (c == Criterion::D && g.bidirected_count() > 0) {
    throw Error(ErrorCode::CriterionUnsupported,
                "d-separation requested on a graph with bidirected edges");
  }
}

void check_sets(const MixedGraph& g, const NodeSet& a, const NodeSet& b, const NodeSet& z) {
  for (const NodeSet* s : {&a, &b, &z}) {
    if (s->universe() != g.size()) {
      throw Error(ErrorCode::UnknownNode, "node set does not belong to this graph");
    }
  }
  if (a.intersects(b) || a.intersects(z) || b.intersects(z)) {
    throw Error(ErrorCode::OverlappingSets, "separation query sets must be pairwise disjoint");
  }
}

BlockContext make_context(const MixedGraph& g, const NodeSet& z, Criterion c) {
  return BlockContext{g, z, z | ancestors(g, z), c};
}

}  // namespace

bool is_valid_path(const MixedGraph& g, const Path& p) {
  if (p.nodes.empty() || p.steps.size() + 1 != p.nodes.size()) return false;
  NodeSet seen = g.empty_set();
  for (NodeIndex v : p.nodes) {
    if (v >= g.size() || seen.contains(v)) return false;
    seen.insert(v);
  }
  for (std::size_t k = 0; k < p.steps.size(); ++k) {
    if (!step_exists(g, p.nodes[k], p.nodes[k + 1], p.steps[k])) return false;
  }
  return true;
}

std::vector<Path> enumerate_paths(const MixedGraph& g, NodeIndex a, NodeIndex b) {
  if (a >= g.size() || b >= g.size()) throw Error(ErrorCode::UnknownNode, "path endpoint out of range");
  if (a == b) throw Error(ErrorCode::InvalidArgument, "path endpoints must differ");

  std::vector<std::vector<Step>> adj(g.size());
  for (NodeIndex v = 0; v < g.size(); ++v) adj[v] = steps_from(g, v);

  std::vector<Path> out;
  Path current;
  current.nodes.push_back(a);
  NodeSet on_path = single(g, a);
  auto dfs = [&](auto&& self, NodeIndex v) -> void {
    if (v == b) {
      out.push_back(current);
      return;
    }
    for (const Step& s : adj[v]) {
      if (on_path.contains(s.to)) continue;
      current.nodes.push_back(s.to);
      current.steps.push_back(s.kind);
      on_path.insert(s.to);
      self(self, s.to);
      on_path.erase(s.to);
      current.nodes.pop_back();
      current.steps.pop_back();
    }
  };
  dfs(dfs, a);
  std::sort(out.begin(), out.end(), path_less);
  return out;
}

bool is_blocked(const MixedGraph& g, const Path& p, const NodeSet& z, Criterion c) {
  if (!is_valid_path(g, p)) throw Error(ErrorCode::InvalidPath, "path is not a simple path of the graph");
  if (z.universe() != g.size()) throw Error(ErrorCode::UnknownNode, "node set does not belong to this graph");
  check_criterion(g, c);
  if (z.contains(p.nodes.front()) || z.contains(p.nodes.back())) return true;
  const BlockContext ctx = make_context(g, z, c);
  for (std::size_t k = 1; k + 1 < p.nodes.size(); ++k) {
    if (interior_blocks(ctx, p.nodes[k - 1], p.steps[k - 1], p.nodes[k], p.steps[k], p.nodes[k + 1])) {
      return true;
    }
  }
  return false;
}

bool separated_oracle(const MixedGraph& g, const NodeSet& a, const NodeSet& b, const NodeSet& z,
                      Criterion c) {
  check_sets(g, a, b, z);
  check_criterion(g, c);
  const BlockContext ctx = make_context(g, z, c);

  std::vector<std::vector<Step>> adj(g.size());
  for (NodeIndex v = 0; v < g.size(); ++v) adj[v] = steps_from(g, v);

  // Depth-first over simple paths, abandoning a prefix as soon as one of its
  // interior nodes blocks (blocking never depends on later steps).
  std::vector<NodeIndex> nodes;
  std::vector<StepKind> steps;
  NodeSet on_path = g.empty_set();
  bool open_found = false;
  auto dfs = [&](auto&& self, NodeIndex v) -> void {
    if (open_found) return;
    if (nodes.size() > 1 && b.contains(v)) {
      open_found = true;
      return;
    }
    for (const Step& s : adj[v]) {
      if (on_path.contains(s.to)) continue;
      if (nodes.size() > 1 &&
          interior_blocks(ctx, nodes[nodes.size() - 2], steps.back(), v, s.kind, s.to)) {
        continue;
      }
      nodes.push_back(s.to);
      steps.push_back(s.kind);
      on_path.insert(s.to);
      self(self, s.to);
      on_path.erase(s.to);
      nodes.pop_back();
      steps.pop_back();
      if (open_found) return;
    }
  };
  a.for_each([&](NodeIndex start) {
    if (open_found) return;
    nodes.assign(1, start);
    steps.clear();
    on_path = single(g, start);
    dfs(dfs, start);
  });
  return !open_found;
}

bool separated(const MixedGraph& g, const NodeSet& a, const NodeSet& b, const NodeSet& z,
               Criterion c) {
  check_sets(g, a, b, z);
  check_criterion(g, c);
  const BlockContext ctx = make_context(g, z, c);

  // Walk state: how the walk arrived at the node.
  enum Arrival : std::size_t { Start = 0, Head = 1, TailInside = 2, TailOutside = 3 };
  const std::size_t n = g.size();
  std::vector<std::array<bool, 4>> seen(n, {false, false, false, false});
  std::deque<std::pair<NodeIndex, Arrival>> queue;
  a.for_each([&](NodeIndex v) {
    seen[v][Start] = true;
    queue.emplace_back(v, Start);
  });

  auto try_leave = [&](NodeIndex v, Arrival arr, StepKind out, NodeIndex w) {
    if (arr == Start) return true;
    const bool collider = arr == Head && head_at_start(out);
    if (collider) return ctx.z_or_an.contains(v);
    if (!z.contains(v)) return true;
    if (c != Criterion::Sigma) return false;
    const bool right_leaves = !head_at_start(out) && !g.same_scc(v, w);
    return arr != TailOutside && !right_leaves;
  };

  while (!queue.empty()) {
    auto [v, arr] = queue.front();
    queue.pop_front();
    if (arr != Start && b.contains(v)) return false;
    auto visit = [&](NodeIndex w, StepKind kind) {
      if (!try_leave(v, arr, kind, w)) return;
      Arrival next = head_at_end(kind) ? Head : (g.same_scc(v, w) ? TailInside : TailOutside);
      if (!seen[w][next]) {
        seen[w][next] = true;
        queue.emplace_back(w, next);
      }
    };
    for (NodeIndex w : g.children(v)) visit(w, StepKind::Forward);
    for (NodeIndex w : g.parents(v)) visit(w, StepKind::Backward);
    for (NodeIndex w : g.spouses(v)) visit(w, StepKind::Bi);
  }
  return true;
}

}  // namespace blanketlab
