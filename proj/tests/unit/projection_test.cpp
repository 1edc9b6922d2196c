#include <gtest/gtest.h>

#include <algorithm>

#include "blanketlab/error.hpp"
#include "blanketlab/graph_io.hpp"
#include "blanketlab/projection.hpp"
#include "blanketlab/relations.hpp"
#include "blanketlab/separation.hpp"
#include "fixtures.hpp"
#include "random_graphs.hpp"

namespace blanketlab {
namespace {

using testing::fixture;

bool into_front(StepKind k) { return k == StepKind::Backward || k == StepKind::Bi; }
bool into_back(StepKind k) { return k == StepKind::Forward || k == StepKind::Bi; }

// Edge sets a projection must have, read off hidden-interior simple paths.
struct PathEdges {
  bool directed_ij = false;
  bool directed_ji = false;
  bool bidirected = false;
};

PathEdges edges_from_paths(const MixedGraph& g, const NodeSet& observed, NodeIndex i, NodeIndex j) {
  PathEdges out;
  for (const Path& p : enumerate_paths(g, i, j)) {
    bool hidden_interior = true;
    for (std::size_t k = 1; k + 1 < p.nodes.size(); ++k)
      if (observed.contains(p.nodes[k])) hidden_interior = false;
    if (!hidden_interior) continue;
    const auto& s = p.steps;
    if (std::all_of(s.begin(), s.end(), [](StepKind k) { return k == StepKind::Forward; })) out.directed_ij = true;
    if (std::all_of(s.begin(), s.end(), [](StepKind k) { return k == StepKind::Backward; })) out.directed_ji = true;
    if (!into_front(s.front()) || !into_back(s.back())) continue;
    bool collider_free = true;
    for (std::size_t k = 0; k + 1 < s.size(); ++k)
      if (into_back(s[k]) && into_front(s[k + 1])) collider_free = false;
    if (collider_free) out.bidirected = true;
  }
  return out;
}

void expect_matches_paths(const MixedGraph& g, const NodeSet& observed) {
  const MixedGraph p = latent_project(g, observed);
  ASSERT_EQ(p.size(), observed.size());
  const auto obs = observed.elements();
  for (std::size_t x = 0; x < obs.size(); ++x) {
    for (std::size_t y = x + 1; y < obs.size(); ++y) {
      const PathEdges e = edges_from_paths(g, observed, obs[x], obs[y]);
      const NodeIndex a = p.index(g.label(obs[x]));
      const NodeIndex b = p.index(g.label(obs[y]));
      EXPECT_EQ(p.has_directed(a, b), e.directed_ij) << g.label(obs[x]) << " -> " << g.label(obs[y]);
      EXPECT_EQ(p.has_directed(b, a), e.directed_ji) << g.label(obs[y]) << " -> " << g.label(obs[x]);
      EXPECT_EQ(p.has_bidirected(a, b), e.bidirected) << g.label(obs[x]) << " <-> " << g.label(obs[y]);
    }
  }
}

TEST(Projection, HiddenConfounderBecomesBidirected) {
  const auto g = fixture("fig2l");
  const auto p = latent_project(g, g.set_of({"I1", "X1", "X2", "X3", "Y"}));
  const auto expected = parse_graph(
      "node Y response\nnode X1 predictor\nnode X2 predictor\nnode X3 predictor\n"
      "node I1 intervention\n"
      "edge I1 -> X3\nedge X1 -> Y\nedge Y -> X3\nedge X2 <-> Y\n");
  EXPECT_EQ(p, expected);
  EXPECT_EQ(latent_project(g), expected);
}

TEST(Projection, IdentityWithoutHiddenNodes) {
  for (const char* name : {"fig1", "fig2r", "fig3", "fig4", "fig6"}) {
    const auto g = fixture(name);
    EXPECT_EQ(latent_project(g, g.all_nodes()), g) << name;
  }
}

TEST(Projection, HiddenChainContracts) {
  const auto g = parse_graph(
      "node Y response\nnode X1 predictor\nnode X2 predictor\nnode H1 hidden\nnode H2 hidden\n"
      "edge X1 -> H1\nedge H1 -> H2\nedge H2 -> X2\n");
  const auto p = latent_project(g);
  EXPECT_EQ(p.size(), 3U);
  EXPECT_EQ(p.directed_count(), 1U);
  EXPECT_TRUE(p.has_directed(p.index("X1"), p.index("X2")));
  EXPECT_EQ(p.bidirected_count(), 0U);
}

TEST(Projection, HiddenCycleDropsSelfLoop) {
  const auto g = parse_graph(
      "node Y response\nnode X1 predictor\nnode H1 hidden\n"
      "edge X1 -> H1\nedge H1 -> X1\nedge X1 -> Y\n");
  const auto p = latent_project(g);
  EXPECT_EQ(p.directed_count(), 1U);
  EXPECT_TRUE(p.has_directed(p.index("X1"), p.index("Y")));
}

TEST(Projection, ColliderAmongHiddenNodesGivesNothing) {
  const auto g = parse_graph(
      "node Y response\nnode X1 predictor\nnode H1 hidden\nnode H2 hidden\nnode H3 hidden\n"
      "edge H1 -> X1\nedge H1 <-> H2\nedge H2 <-> H3\nedge H3 -> Y\n");
  EXPECT_EQ(latent_project(g).bidirected_count(), 0U);
  const auto h = parse_graph(
      "node Y response\nnode X1 predictor\nnode H1 hidden\nnode H2 hidden\n"
      "edge H1 -> X1\nedge H1 <-> H2\nedge H2 -> Y\n");
  EXPECT_EQ(latent_project(h).bidirected_count(), 1U);
}

TEST(Projection, RejectsDroppingObservedNodes) {
  const auto g = fixture("fig2l");
  try {
    (void)latent_project(g, g.set_of({"Y", "X1"}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::HiddenObservedMismatch);
  }
}

TEST(Projection, KeptHiddenNodesStayHidden) {
  const auto g = parse_graph(
      "node Y response\nnode X1 predictor\nnode H1 hidden\nnode H2 hidden\n"
      "edge X1 -> H1\nedge H1 -> H2\nedge H2 -> Y\n");
  const auto p = latent_project(g, g.set_of({"Y", "X1", "H2"}));
  EXPECT_EQ(p.role(p.index("H2")), NodeRole::Hidden);
  EXPECT_TRUE(p.has_directed(p.index("X1"), p.index("H2")));
}

TEST(Projection, AgreesWithPathCharacterisation) {
  testing::Rng rng(31);
  for (int round = 0; round < 120; ++round) {
    const bool acyclic = round % 2 == 0;
    const auto g = testing::random_hidden_graph(rng, 3 + static_cast<std::size_t>(round % 4),
                                                1 + static_cast<std::size_t>(round % 3), 0.3, acyclic);
    expect_matches_paths(g, g.all_nodes() - g.with_role(NodeRole::Hidden));
  }
}

TEST(Projection, PreservesAcyclicity) {
  testing::Rng rng(37);
  for (int round = 0; round < 200; ++round) {
    const auto g = testing::random_hidden_graph(rng, 3 + static_cast<std::size_t>(round % 5), 2, 0.35, true);
    ASSERT_FALSE(g.has_directed_cycle());
    EXPECT_FALSE(latent_project(g).has_directed_cycle());
  }
}

TEST(Projection, ComposesInStages) {
  testing::Rng rng(41);
  for (int round = 0; round < 200; ++round) {
    const bool acyclic = round % 3 != 0;
    const auto g = testing::random_hidden_graph(rng, 3 + static_cast<std::size_t>(round % 3), 3, 0.3, acyclic);
    const NodeSet hidden = g.with_role(NodeRole::Hidden);
    const NodeSet o2 = g.all_nodes() - hidden;
    const NodeSet o1 = o2 | testing::random_subset(rng, hidden, 0.5);
    const auto staged = latent_project(g, o1);
    const auto direct = latent_project(g, o2);
    EXPECT_EQ(latent_project(staged, staged.translate(o2, g)), direct);
    EXPECT_EQ(latent_project(staged), direct);
  }
}

// d-separation among observed nodes survives projection as m-separation.
TEST(Projection, PreservesSeparation) {
  testing::Rng rng(43);
  for (int round = 0; round < 40; ++round) {
    const auto g = testing::random_hidden_graph(rng, 4 + static_cast<std::size_t>(round % 3),
                                                2 + static_cast<std::size_t>(round % 2), 0.3, true);
    const auto p = latent_project(g);
    const auto obs = (g.all_nodes() - g.with_role(NodeRole::Hidden)).elements();
    for (std::size_t x = 0; x < obs.size(); ++x) {
      for (std::size_t y = x + 1; y < obs.size(); ++y) {
        std::vector<NodeIndex> rest;
        for (NodeIndex v : obs)
          if (v != obs[x] && v != obs[y]) rest.push_back(v);
        for (std::uint32_t mask = 0; mask < (1U << rest.size()); ++mask) {
          NodeSet z = g.empty_set();
          for (std::size_t k = 0; k < rest.size(); ++k)
            if ((mask >> k) & 1U) z.insert(rest[k]);
          const bool in_g = separated(g, single(g, obs[x]), single(g, obs[y]), z, Criterion::D);
          const NodeIndex a = p.index(g.label(obs[x]));
          const NodeIndex b = p.index(g.label(obs[y]));
          const bool in_p = separated(p, single(p, a), single(p, b), p.translate(z, g), Criterion::M);
          EXPECT_EQ(in_g, in_p);
        }
      }
    }
  }
}

}  // namespace
}  // namespace blanketlab
