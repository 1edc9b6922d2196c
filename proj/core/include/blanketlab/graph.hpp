#pragma once

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "blanketlab/node_set.hpp"

namespace blanketlab {

enum class NodeRole { Predictor, Response, Intervention, Hidden };

enum class GraphClass { DAG, DG, ADMG, DMG };

enum class EdgeType { Directed, Bidirected };

std::string_view to_string(NodeRole role);
std::string_view to_string(GraphClass cls);
std::optional<NodeRole> parse_role(std::string_view text);

struct NodeDecl {
  std::string label;
  NodeRole role = NodeRole::Predictor;
};

struct EdgeDecl {
  std::string from;
  std::string to;
  EdgeType type = EdgeType::Directed;
};

struct GraphSpec {
  std::vector<NodeDecl> nodes;
  std::vector<EdgeDecl> edges;
};

// Natural label order: digit runs compare numerically, so X2 < X10.
bool label_less(std::string_view a, std::string_view b);

/// Immutable graph with directed and bidirected edges.
///
/// Nodes are stored in canonical label order, so a node's index doubles as its
/// rank in every set-valued output. Strongly connected components, districts
/// and relative classes are computed once at construction.
class MixedGraph {
 public:
  MixedGraph() = default;

  /// Validates the declarations and builds the graph. Throws Error with
  /// DuplicateNode, UnknownEndpoint, SelfLoop or DuplicateEdge.
  static MixedGraph build(const GraphSpec& spec);

  std::size_t size() const noexcept { return labels_.size(); }
  const std::string& label(NodeIndex i) const { return labels_.at(i); }
  NodeRole role(NodeIndex i) const { return roles_.at(i); }

  std::optional<NodeIndex> find(std::string_view label) const;
  /// Throws UnknownNode.
  NodeIndex index(std::string_view label) const;

  const std::vector<NodeIndex>& parents(NodeIndex i) const { return parents_.at(i); }
  const std::vector<NodeIndex>& children(NodeIndex i) const { return children_.at(i); }
  const std::vector<NodeIndex>& spouses(NodeIndex i) const { return spouses_.at(i); }

  bool has_directed(NodeIndex from, NodeIndex to) const;
  bool has_bidirected(NodeIndex a, NodeIndex b) const;

  std::vector<std::pair<NodeIndex, NodeIndex>> directed_edges() const;
  // Each bidirected edge once, smaller index first.
  std::vector<std::pair<NodeIndex, NodeIndex>> bidirected_edges() const;
  std::size_t directed_count() const noexcept { return directed_count_; }
  std::size_t bidirected_count() const noexcept { return bidirected_count_; }

  std::size_t scc_id(NodeIndex i) const { return scc_id_.at(i); }
  std::size_t district_id(NodeIndex i) const { return district_id_.at(i); }
  std::size_t relative_id(NodeIndex i) const { return relative_id_.at(i); }
  bool same_scc(NodeIndex a, NodeIndex b) const { return scc_id(a) == scc_id(b); }
  std::size_t scc_count() const noexcept { return scc_members_.size(); }
  const NodeSet& scc_members(std::size_t id) const { return scc_members_.at(id); }

  GraphClass graph_class() const;
  bool has_directed_cycle() const noexcept { return cyclic_; }

  NodeSet empty_set() const { return NodeSet(size()); }
  NodeSet all_nodes() const { return NodeSet::full(size()); }
  /// Throws UnknownNode.
  NodeSet set_of(std::initializer_list<std::string_view> labels) const;
  NodeSet set_of(const std::vector<std::string>& labels) const;
  std::vector<std::string> labels_of(const NodeSet& s) const;
  /// Re-expresses a set of `other`'s nodes in this graph's indices (by label).
  NodeSet translate(const NodeSet& s, const MixedGraph& other) const;

  NodeSet with_role(NodeRole role) const;
  NodeSet predictors() const { return with_role(NodeRole::Predictor); }
  NodeSet interventions() const { return with_role(NodeRole::Intervention); }
  /// The unique Response node; throws NoResponse or MultipleResponses.
  NodeIndex response() const;

  GraphSpec spec() const;

  friend bool operator==(const MixedGraph& a, const MixedGraph& b);

 private:
  void compute_components();

  std::vector<std::string> labels_;
  std::vector<NodeRole> roles_;
  std::vector<std::vector<NodeIndex>> parents_;
  std::vector<std::vector<NodeIndex>> children_;
  std::vector<std::vector<NodeIndex>> spouses_;
  std::size_t directed_count_ = 0;
  std::size_t bidirected_count_ = 0;
  std::vector<std::size_t> scc_id_;
  std::vector<std::size_t> district_id_;
  std::vector<std::size_t> relative_id_;
  std::vector<NodeSet> scc_members_;
  bool cyclic_ = false;
};

}  // namespace blanketlab
