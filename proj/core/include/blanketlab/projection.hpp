#pragma once

#include "blanketlab/graph.hpp"

namespace blanketlab {

/// Marginalises every node outside `observed`.
///
/// Nodes left out must carry the Hidden role; Hidden nodes kept in `observed`
/// stay Hidden, which allows projecting in stages. Directed edges come from
/// directed paths with hidden interiors. Bidirected edges come from a hidden
/// common ancestor reached through hidden chains on both sides, or from an
/// existing bidirected edge between the ends of two such chains. Directed
/// self-loops produced by hidden cycles are dropped.
MixedGraph latent_project(const MixedGraph& g, const NodeSet& observed);

/// Projection onto all non-Hidden nodes.
MixedGraph latent_project(const MixedGraph& g);

}  // namespace blanketlab
