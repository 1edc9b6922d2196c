#include <gtest/gtest.h>

#include "blanketlab/error.hpp"
#include "blanketlab/graph.hpp"
#include "fixtures.hpp"

namespace blanketlab {
namespace {

using testing::fixture;

ErrorCode build_error(const GraphSpec& spec) {
  try {
    (void)MixedGraph::build(spec);
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "build succeeded";
  return ErrorCode::InvalidArgument;
}

TEST(MixedGraph, SingleResponseIsDag) {
  const auto g = MixedGraph::build({{{"Y", NodeRole::Response}}, {}});
  EXPECT_EQ(g.size(), 1U);
  EXPECT_EQ(g.graph_class(), GraphClass::DAG);
  EXPECT_EQ(g.label(g.response()), "Y");
}

TEST(MixedGraph, FirstFixtureIsTenNodeDag) {
  const auto g = fixture("fig1");
  EXPECT_EQ(g.size(), 10U);
  EXPECT_EQ(g.directed_count(), 10U);
  EXPECT_EQ(g.graph_class(), GraphClass::DAG);
  EXPECT_EQ(g.interventions(), g.set_of({"I1", "I2"}));
}

TEST(MixedGraph, BuildErrors) {
  EXPECT_EQ(build_error({{{"Y", NodeRole::Response}}, {{"Y", "Y"}}}), ErrorCode::SelfLoop);
  EXPECT_EQ(build_error({{{"Y", NodeRole::Response}}, {{"Y", "Y", EdgeType::Bidirected}}}),
            ErrorCode::SelfLoop);
  EXPECT_EQ(build_error({{{"Y", NodeRole::Response}, {"Y", NodeRole::Predictor}}, {}}),
            ErrorCode::DuplicateNode);
  EXPECT_EQ(build_error({{{"Y", NodeRole::Response}}, {{"Y", "X1"}}}), ErrorCode::UnknownEndpoint);
  const std::vector<NodeDecl> two{{"Y", NodeRole::Response}, {"X1"}};
  EXPECT_EQ(build_error({two, {{"X1", "Y"}, {"X1", "Y"}}}), ErrorCode::DuplicateEdge);
  EXPECT_EQ(build_error({two, {{"X1", "Y", EdgeType::Bidirected}, {"Y", "X1", EdgeType::Bidirected}}}),
            ErrorCode::DuplicateEdge);
}

TEST(MixedGraph, ThreeEdgesMayJoinOnePair) {
  const auto g = MixedGraph::build(
      {{{"Y", NodeRole::Response}, {"X1"}},
       {{"X1", "Y"}, {"Y", "X1"}, {"X1", "Y", EdgeType::Bidirected}}});
  EXPECT_EQ(g.directed_count(), 2U);
  EXPECT_EQ(g.bidirected_count(), 1U);
  EXPECT_EQ(g.graph_class(), GraphClass::DMG);
}

TEST(MixedGraph, ClassFollowsEdgeKinds) {
  const std::vector<NodeDecl> nodes{{"Y", NodeRole::Response}, {"A"}, {"B"}};
  EXPECT_EQ(MixedGraph::build({nodes, {{"A", "B"}}}).graph_class(), GraphClass::DAG);
  EXPECT_EQ(MixedGraph::build({nodes, {{"A", "B"}, {"B", "A"}}}).graph_class(), GraphClass::DG);
  EXPECT_EQ(MixedGraph::build({nodes, {{"A", "B"}, {"A", "Y", EdgeType::Bidirected}}}).graph_class(),
            GraphClass::ADMG);
  EXPECT_EQ(MixedGraph::build({nodes, {{"A", "B"}, {"B", "A"}, {"A", "Y", EdgeType::Bidirected}}})
                .graph_class(),
            GraphClass::DMG);
}

TEST(MixedGraph, NaturalLabelOrder) {
  EXPECT_TRUE(label_less("X2", "X10"));
  EXPECT_FALSE(label_less("X10", "X2"));
  EXPECT_TRUE(label_less("I1", "X1"));
  EXPECT_TRUE(label_less("X1", "X1a"));
  const auto g = MixedGraph::build({{{"X10"}, {"Y", NodeRole::Response}, {"X2"}, {"X1"}}, {}});
  EXPECT_EQ(g.labels_of(g.all_nodes()), (std::vector<std::string>{"X1", "X2", "X10", "Y"}));
}

TEST(MixedGraph, ResponseErrors) {
  const auto none = MixedGraph::build({{{"X1"}}, {}});
  EXPECT_THROW((void)none.response(), Error);
  const auto two = MixedGraph::build({{{"Y", NodeRole::Response}, {"Z", NodeRole::Response}}, {}});
  try {
    (void)two.response();
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::MultipleResponses);
  }
}

TEST(MixedGraph, LookupAndTranslate) {
  const auto g = fixture("fig3");
  EXPECT_THROW((void)g.index("nope"), Error);
  EXPECT_FALSE(g.find("nope").has_value());
  const auto sub = MixedGraph::build({{{"Y", NodeRole::Response}, {"X4"}}, {}});
  const NodeSet s = g.translate(sub.all_nodes(), sub);
  EXPECT_EQ(s, g.set_of({"X4", "Y"}));
}

TEST(MixedGraph, SpecRoundTrip) {
  for (const char* name : {"fig1", "fig2l", "fig2r", "fig3", "fig4", "fig5", "fig6"}) {
    const auto g = fixture(name);
    EXPECT_EQ(MixedGraph::build(g.spec()), g) << name;
  }
}

TEST(MixedGraph, ComponentsOfFeedbackFixture) {
  const auto g = fixture("fig4");
  const NodeIndex y = g.response();
  EXPECT_TRUE(g.has_directed_cycle());
  EXPECT_TRUE(g.same_scc(y, g.index("X6")));
  EXPECT_TRUE(g.same_scc(y, g.index("X7")));
  EXPECT_FALSE(g.same_scc(y, g.index("X10")));
  EXPECT_EQ(g.scc_members(g.scc_id(g.index("X3"))), g.set_of({"X2", "X3", "X4"}));
}

}  // namespace
}  // namespace blanketlab
