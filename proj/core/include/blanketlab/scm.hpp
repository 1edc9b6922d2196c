#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "blanketlab/graph.hpp"

namespace blanketlab {

/// Linear SCM X = B X + e over a directed graph, e ~ N(0, diag(noise_var)).
/// B(i, j) is the coefficient of the edge j -> i.
struct LinearScm {
  MixedGraph graph;
  Eigen::MatrixXd weights;
  Eigen::VectorXd noise_var;
};

struct CovMatrix {
  std::vector<std::string> labels;  // graph node order
  Eigen::MatrixXd values;
};

/// Throws HasBidirected or InvalidArgument.
LinearScm synthesize(const MixedGraph& g, std::uint64_t seed, double weight_low = 0.1,
                     double weight_high = 0.9);

/// Largest eigenvalue modulus of B restricted to `members`.
double spectral_radius(const Eigen::MatrixXd& b, const NodeSet& members);

/// Throws SingularSystem.
CovMatrix exact_covariance(const LinearScm& m);

/// Partial correlation of a and b given z, via the inverse of the submatrix
/// over {a, b} and z. Throws IllConditioned when its condition number
/// exceeds 1e10.
double partial_correlation(const CovMatrix& cov, NodeIndex a, NodeIndex b, const NodeSet& z);

/// Replaces each bidirected edge a <-> b by a fresh hidden parent of a and b.
MixedGraph expand_bidirected(const MixedGraph& g);

struct MarkovViolation {
  std::size_t trial = 0;
  NodeIndex a = 0;
  NodeIndex b = 0;
  NodeSet z;
  double value = 0.0;
  bool from_projection = false;
};

struct MarkovReport {
  std::size_t trials = 0;
  std::size_t checked = 0;            // separated triples evaluated
  std::size_t projection_checked = 0; // triples separated in the projection
  std::size_t skipped = 0;            // ill-conditioned evaluations
  double max_abs = 0.0;               // triples separated in the graph
  double projection_max_abs = 0.0;    // triples separated in the projection
  std::vector<MarkovViolation> violations;

  bool ok() const { return violations.empty(); }
  double skip_rate() const;
};

/// For every observed triple separated in `g` (sigma) or in its latent
/// projection (sigma), checks that the exact partial correlation vanishes.
MarkovReport markov_check(const MixedGraph& g, std::size_t trials, std::uint64_t seed,
                          double tol = 1e-7);

struct StabilityCheckEntry {
  NodeIndex intervention = 0;
  double max_abs = 0.0;
  std::size_t skipped = 0;
};

struct StabilityReport {
  std::size_t trials = 0;
  double tol = 0.0;
  std::vector<StabilityCheckEntry> entries;

  bool ok() const;
};

/// Checks that Y and each intervention are uncorrelated given `s`. Graphs with
/// bidirected edges are first expanded into explicit hidden confounders.
StabilityReport stability_check(const MixedGraph& g, const NodeSet& s, std::size_t trials,
                                std::uint64_t seed, double tol = 1e-7);

}  // namespace blanketlab
