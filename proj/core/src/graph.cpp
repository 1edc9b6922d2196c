#include "blanketlab/graph.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <numeric>
#include <set>
#include <unordered_map>

#include "blanketlab/error.hpp"

namespace blanketlab {

std::string_view to_string(NodeRole role) {
  switch (role) {
    case NodeRole::Predictor: return "predictor";
    case NodeRole::Response: return "response";
    case NodeRole::Intervention: return "intervention";
    case NodeRole::Hidden: return "hidden";
  }
  return "predictor";
}

std::string_view to_string(GraphClass cls) {
  switch (cls) {
    case GraphClass::DAG: return "DAG";
    case GraphClass::DG: return "DG";
    case GraphClass::ADMG: return "ADMG";
    case GraphClass::DMG: return "DMG";
  }
  return "DMG";
}

std::optional<NodeRole> parse_role(std::string_view text) {
  if (text == "predictor") return NodeRole::Predictor;
  if (text == "response") return NodeRole::Response;
  if (text == "intervention") return NodeRole::Intervention;
  if (text == "hidden") return NodeRole::Hidden;
  return std::nullopt;
}

bool label_less(std::string_view a, std::string_view b) {
  std::size_t i = 0;
  std::size_t j = 0;
  auto digit = [](char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; };
  while (i < a.size() && j < b.size()) {
    if (digit(a[i]) && digit(b[j])) {
      std::size_t ie = i;
      std::size_t je = j;
      while (ie < a.size() && digit(a[ie])) ++ie;
      while (je < b.size() && digit(b[je])) ++je;
      std::string_view ra = a.substr(i, ie - i);
      std::string_view rb = b.substr(j, je - j);
      while (ra.size() > 1 && ra.front() == '0') ra.remove_prefix(1);
      while (rb.size() > 1 && rb.front() == '0') rb.remove_prefix(1);
      if (ra.size() != rb.size()) return ra.size() < rb.size();
      if (ra != rb) return ra < rb;
      i = ie;
      j = je;
    } else {
      if (a[i] != b[j]) return a[i] < b[j];
      ++i;
      ++j;
    }
  }
  if (a.size() - i != b.size() - j) return a.size() - i < b.size() - j;
  // Equal under natural order (e.g. X01 vs X1): fall back to bytes for a total order.
  return a < b;
}

namespace {

std::string describe(const EdgeDecl& e) {
  return e.from + (e.type == EdgeType::Directed ? " -> " : " <-> ") + e.to;
}

}  // namespace

MixedGraph MixedGraph::build(const GraphSpec& spec) {
  MixedGraph g;
  std::vector<NodeDecl> nodes = spec.nodes;
  {
    std::set<std::string> seen;
    for (const auto& n : nodes) {
      if (n.label.empty()) throw Error(ErrorCode::InvalidArgument, "empty node label");
      if (!seen.insert(n.label).second) {
        throw Error(ErrorCode::DuplicateNode, "duplicate node declaration: node " + n.label);
      }
    }
  }
  std::sort(nodes.begin(), nodes.end(),
            [](const NodeDecl& a, const NodeDecl& b) { return label_less(a.label, b.label); });

  const std::size_t n = nodes.size();
  std::unordered_map<std::string, NodeIndex> index;
  for (std::size_t i = 0; i < n; ++i) {
    g.labels_.push_back(nodes[i].label);
    g.roles_.push_back(nodes[i].role);
    index.emplace(nodes[i].label, static_cast<NodeIndex>(i));
  }
  g.parents_.assign(n, {});
  g.children_.assign(n, {});
  g.spouses_.assign(n, {});

  std::set<std::pair<NodeIndex, NodeIndex>> directed;
  std::set<std::pair<NodeIndex, NodeIndex>> bidirected;
  for (const auto& e : spec.edges) {
    auto a = index.find(e.from);
    auto b = index.find(e.to);
    if (a == index.end() || b == index.end()) {
      throw Error(ErrorCode::UnknownEndpoint,
                  "edge " + describe(e) + " references undeclared node " +
                      (a == index.end() ? e.from : e.to));
    }
    if (a->second == b->second) {
      throw Error(ErrorCode::SelfLoop, "self-loop in edge " + describe(e));
    }
    if (e.type == EdgeType::Directed) {
      if (!directed.emplace(a->second, b->second).second) {
        throw Error(ErrorCode::DuplicateEdge, "duplicate edge " + describe(e));
      }
    } else {
      auto key = std::minmax(a->second, b->second);
      if (!bidirected.emplace(key.first, key.second).second) {
        throw Error(ErrorCode::DuplicateEdge, "duplicate edge " + describe(e));
      }
    }
  }
  for (auto [a, b] : directed) {
    g.children_[a].push_back(b);
    g.parents_[b].push_back(a);
  }
  for (auto [a, b] : bidirected) {
    g.spouses_[a].push_back(b);
    g.spouses_[b].push_back(a);
  }
  for (std::size_t i = 0; i < n; ++i) {
    std::sort(g.parents_[i].begin(), g.parents_[i].end());
    std::sort(g.children_[i].begin(), g.children_[i].end());
    std::sort(g.spouses_[i].begin(), g.spouses_[i].end());
  }
  g.directed_count_ = directed.size();
  g.bidirected_count_ = bidirected.size();
  g.compute_components();
  return g;
}

void MixedGraph::compute_components() {
  const std::size_t n = size();

  // Tarjan's algorithm; graphs here are small enough for recursion.
  constexpr std::size_t kUnvisited = static_cast<std::size_t>(-1);
  std::vector<std::size_t> order(n, kUnvisited);
  std::vector<std::size_t> low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<NodeIndex> stack;
  std::size_t counter = 0;
  scc_id_.assign(n, 0);
  scc_members_.clear();

  std::function<void(NodeIndex)> visit = [&](NodeIndex v) {
    order[v] = low[v] = counter++;
    stack.push_back(v);
    on_stack[v] = true;
    for (NodeIndex w : children_[v]) {
      if (order[w] == kUnvisited) {
        visit(w);
        low[v] = std::min(low[v], low[w]);
      } else if (on_stack[w]) {
        low[v] = std::min(low[v], order[w]);
      }
    }
    if (low[v] == order[v]) {
      NodeSet members(n);
      NodeIndex w = 0;
      do {
        w = stack.back();
        stack.pop_back();
        on_stack[w] = false;
        members.insert(w);
        scc_id_[w] = scc_members_.size();
      } while (w != v);
      scc_members_.push_back(std::move(members));
    }
  };
  for (NodeIndex v = 0; v < n; ++v) {
    if (order[v] == kUnvisited) visit(v);
  }
  cyclic_ = std::any_of(scc_members_.begin(), scc_members_.end(),
                        [](const NodeSet& s) { return s.size() > 1; });

  // Districts and relative classes via union-find.
  auto components = [n](auto&& link) {
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    std::function<std::size_t(std::size_t)> root = [&](std::size_t x) {
      return parent[x] == x ? x : parent[x] = root(parent[x]);
    };
    link([&](std::size_t a, std::size_t b) { parent[root(a)] = root(b); });
    std::vector<std::size_t> id(n);
    std::unordered_map<std::size_t, std::size_t> relabel;
    for (std::size_t i = 0; i < n; ++i) {
      auto [it, _] = relabel.emplace(root(i), relabel.size());
      id[i] = it->second;
    }
    return id;
  };
  district_id_ = components([&](auto&& unite) {
    for (NodeIndex a = 0; a < n; ++a)
      for (NodeIndex b : spouses_[a]) unite(a, b);
  });
  relative_id_ = components([&](auto&& unite) {
    for (NodeIndex a = 0; a < n; ++a) {
      for (NodeIndex b : spouses_[a]) unite(a, b);
      scc_members_[scc_id_[a]].for_each([&](NodeIndex b) { unite(a, b); });
    }
  });
}

std::optional<NodeIndex> MixedGraph::find(std::string_view label) const {
  auto it = std::lower_bound(labels_.begin(), labels_.end(), label,
                             [](const std::string& a, std::string_view b) { return label_less(a, b); });
  if (it != labels_.end() && *it == label) return static_cast<NodeIndex>(it - labels_.begin());
  return std::nullopt;
}

NodeIndex MixedGraph::index(std::string_view label) const {
  if (auto i = find(label)) return *i;
  throw Error(ErrorCode::UnknownNode, "unknown node " + std::string(label));
}

bool MixedGraph::has_directed(NodeIndex from, NodeIndex to) const {
  const auto& ch = children_.at(from);
  return std::binary_search(ch.begin(), ch.end(), to);
}

bool MixedGraph::has_bidirected(NodeIndex a, NodeIndex b) const {
  const auto& sp = spouses_.at(a);
  return std::binary_search(sp.begin(), sp.end(), b);
}

std::vector<std::pair<NodeIndex, NodeIndex>> MixedGraph::directed_edges() const {
  std::vector<std::pair<NodeIndex, NodeIndex>> out;
  for (NodeIndex a = 0; a < size(); ++a)
    for (NodeIndex b : children_[a]) out.emplace_back(a, b);
  return out;
}

std::vector<std::pair<NodeIndex, NodeIndex>> MixedGraph::bidirected_edges() const {
  std::vector<std::pair<NodeIndex, NodeIndex>> out;
  for (NodeIndex a = 0; a < size(); ++a)
    for (NodeIndex b : spouses_[a])
      if (a < b) out.emplace_back(a, b);
  return out;
}

GraphClass MixedGraph::graph_class() const {
  if (bidirected_count_ == 0) return cyclic_ ? GraphClass::DG : GraphClass::DAG;
  return cyclic_ ? GraphClass::DMG : GraphClass::ADMG;
}

NodeSet MixedGraph::set_of(std::initializer_list<std::string_view> labels) const {
  NodeSet s = empty_set();
  for (auto l : labels) s.insert(index(l));
  return s;
}

NodeSet MixedGraph::set_of(const std::vector<std::string>& labels) const {
  NodeSet s = empty_set();
  for (const auto& l : labels) s.insert(index(l));
  return s;
}

std::vector<std::string> MixedGraph::labels_of(const NodeSet& s) const {
  std::vector<std::string> out;
  s.for_each([&](NodeIndex i) { out.push_back(labels_.at(i)); });
  return out;
}

NodeSet MixedGraph::translate(const NodeSet& s, const MixedGraph& other) const {
  NodeSet out = empty_set();
  s.for_each([&](NodeIndex i) { out.insert(index(other.label(i))); });
  return out;
}

NodeSet MixedGraph::with_role(NodeRole role) const {
  NodeSet s = empty_set();
  for (NodeIndex i = 0; i < size(); ++i)
    if (roles_[i] == role) s.insert(i);
  return s;
}

NodeIndex MixedGraph::response() const {
  std::optional<NodeIndex> found;
  for (NodeIndex i = 0; i < size(); ++i) {
    if (roles_[i] != NodeRole::Response) continue;
    if (found) {
      throw Error(ErrorCode::MultipleResponses,
                  "multiple response nodes: " + labels_[*found] + ", " + labels_[i]);
    }
    found = i;
  }
  if (!found) throw Error(ErrorCode::NoResponse, "graph has no response node");
  return *found;
}

GraphSpec MixedGraph::spec() const {
  GraphSpec s;
  for (NodeIndex i = 0; i < size(); ++i) s.nodes.push_back({labels_[i], roles_[i]});
  for (auto [a, b] : directed_edges()) s.edges.push_back({labels_[a], labels_[b], EdgeType::Directed});
  for (auto [a, b] : bidirected_edges()) s.edges.push_back({labels_[a], labels_[b], EdgeType::Bidirected});
  return s;
}

bool operator==(const MixedGraph& a, const MixedGraph& b) {
  return a.labels_ == b.labels_ && a.roles_ == b.roles_ && a.children_ == b.children_ &&
         a.spouses_ == b.spouses_;
}

}  // namespace blanketlab
