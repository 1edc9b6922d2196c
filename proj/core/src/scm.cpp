#include "blanketlab/scm.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <Eigen/Eigenvalues>

#include "blanketlab/error.hpp"
#include "blanketlab/projection.hpp"
#include "blanketlab/relations.hpp"
#include "blanketlab/separation.hpp"

namespace blanketlab {

double spectral_radius(const Eigen::MatrixXd& b, const NodeSet& members) {
  const auto idx = members.elements();
  if (idx.empty()) return 0.0;
  Eigen::MatrixXd block(idx.size(), idx.size());
  for (std::size_t r = 0; r < idx.size(); ++r)
    for (std::size_t c = 0; c < idx.size(); ++c) block(r, c) = b(idx[r], idx[c]);
  Eigen::EigenSolver<Eigen::MatrixXd> solver(block, /*computeEigenvectors=*/false);
  return solver.eigenvalues().cwiseAbs().maxCoeff();
}

LinearScm synthesize(const MixedGraph& g, std::uint64_t seed, double weight_low, double weight_high) {
  if (g.bidirected_count() > 0) {
    throw Error(ErrorCode::HasBidirected, "linear SCMs need explicit hidden confounders; expand bidirected edges first");
  }
  if (!(weight_low > 0.0 && weight_low < weight_high)) {
    throw Error(ErrorCode::InvalidArgument, "weight range must satisfy 0 < low < high");
  }
  const auto n = static_cast<Eigen::Index>(g.size());
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> magnitude(weight_low, weight_high);
  std::uniform_real_distribution<double> variance(0.5, 1.5);
  std::bernoulli_distribution negative(0.5);

  LinearScm m{g, Eigen::MatrixXd::Zero(n, n), Eigen::VectorXd::Ones(n)};
  for (auto [from, to] : g.directed_edges()) {
    const double w = magnitude(rng);
    m.weights(to, from) = negative(rng) ? -w : w;
  }
  for (NodeIndex v = 0; v < g.size(); ++v) {
    const double var = variance(rng);
    m.noise_var(v) = g.role(v) == NodeRole::Intervention ? 1.0 : var;
  }
  // Feedback loops: shrink each SCC's block so the loop system stays solvable.
  for (std::size_t id = 0; id < g.scc_count(); ++id) {
    const NodeSet& members = g.scc_members(id);
    if (members.size() < 2) continue;
    const double rho = spectral_radius(m.weights, members);
    if (rho <= 0.9) continue;
    const double scale = 0.9 / rho;
    members.for_each([&](NodeIndex r) {
      members.for_each([&](NodeIndex c) { m.weights(r, c) *= scale; });
    });
  }
  return m;
}

CovMatrix exact_covariance(const LinearScm& m) {
  const auto n = m.weights.rows();
  const Eigen::MatrixXd a = Eigen::MatrixXd::Identity(n, n) - m.weights;
  Eigen::FullPivLU<Eigen::MatrixXd> lu(a);
  if (!lu.isInvertible()) throw Error(ErrorCode::SingularSystem, "I - B is singular");
  const Eigen::MatrixXd inv = lu.inverse();
  CovMatrix cov;
  for (NodeIndex v = 0; v < m.graph.size(); ++v) cov.labels.push_back(m.graph.label(v));
  cov.values = inv * m.noise_var.asDiagonal() * inv.transpose();
  cov.values = 0.5 * (cov.values + cov.values.transpose());
  return cov;
}

double partial_correlation(const CovMatrix& cov, NodeIndex a, NodeIndex b, const NodeSet& z) {
  const auto n = static_cast<std::size_t>(cov.values.rows());
  if (a >= n || b >= n || z.universe() != n) throw Error(ErrorCode::UnknownNode, "index outside covariance");
  if (a == b || z.contains(a) || z.contains(b)) {
    throw Error(ErrorCode::OverlappingSets, "partial correlation needs distinct a, b outside z");
  }
  std::vector<NodeIndex> idx{a, b};
  z.for_each([&](NodeIndex v) { idx.push_back(v); });
  const auto k = static_cast<Eigen::Index>(idx.size());
  Eigen::MatrixXd sub(k, k);
  for (Eigen::Index r = 0; r < k; ++r)
    for (Eigen::Index c = 0; c < k; ++c) sub(r, c) = cov.values(idx[r], idx[c]);

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(sub);
  const auto& sv = svd.singularValues();
  const double smallest = sv(sv.size() - 1);
  if (!(smallest > 0.0) || sv(0) / smallest > 1e10) {
    throw Error(ErrorCode::IllConditioned, "conditioning submatrix is ill-conditioned");
  }
  const Eigen::MatrixXd precision = sub.inverse();
  return -precision(0, 1) / std::sqrt(precision(0, 0) * precision(1, 1));
}

MixedGraph expand_bidirected(const MixedGraph& g) {
  GraphSpec spec = g.spec();
  std::vector<EdgeDecl> kept;
  for (const auto& e : spec.edges) {
    if (e.type == EdgeType::Directed) kept.push_back(e);
  }
  for (const auto& e : spec.edges) {
    if (e.type != EdgeType::Bidirected) continue;
    std::string name = "H_" + e.from + "_" + e.to;
    while (g.find(name)) name += "_";
    spec.nodes.push_back({name, NodeRole::Hidden});
    kept.push_back({name, e.from, EdgeType::Directed});
    kept.push_back({name, e.to, EdgeType::Directed});
  }
  spec.edges = std::move(kept);
  return MixedGraph::build(spec);
}

double MarkovReport::skip_rate() const {
  const std::size_t total = checked + projection_checked + skipped;
  return total == 0 ? 0.0 : static_cast<double>(skipped) / static_cast<double>(total);
}

namespace {

std::uint64_t trial_seed(std::uint64_t seed, std::size_t trial) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(trial)};
  std::uint64_t out = 0;
  std::vector<std::uint32_t> words(2);
  seq.generate(words.begin(), words.end());
  out = (static_cast<std::uint64_t>(words[0]) << 32) | words[1];
  return out;
}

}  // namespace

MarkovReport markov_check(const MixedGraph& g, std::size_t trials, std::uint64_t seed, double tol) {
  if (g.bidirected_count() > 0) {
    throw Error(ErrorCode::HasBidirected, "markov_check expects a directed graph with explicit hidden nodes");
  }
  const NodeSet observed = g.all_nodes() - g.with_role(NodeRole::Hidden);
  const bool has_hidden = observed.size() != g.size();
  const MixedGraph projected = has_hidden ? latent_project(g, observed) : g;
  const std::vector<NodeIndex> obs = observed.elements();

  struct Triple {
    NodeIndex a, b;
    NodeSet z;
    bool from_projection;
  };
  // Separation depends only on the graph, so collect the triples once.
  std::vector<Triple> triples;
  for (std::size_t x = 0; x < obs.size(); ++x) {
    for (std::size_t y = x + 1; y < obs.size(); ++y) {
      std::vector<NodeIndex> rest;
      for (NodeIndex v : obs)
        if (v != obs[x] && v != obs[y]) rest.push_back(v);
      const std::uint64_t total = std::uint64_t{1} << rest.size();
      for (std::uint64_t mask = 0; mask < total; ++mask) {
        NodeSet z = g.empty_set();
        for (std::size_t k = 0; k < rest.size(); ++k)
          if ((mask >> k) & 1U) z.insert(rest[k]);
        if (separated(g, single(g, obs[x]), single(g, obs[y]), z, Criterion::Sigma)) {
          triples.push_back({obs[x], obs[y], z, false});
        }
        if (has_hidden) {
          const NodeSet pz = projected.translate(z, g);
          const NodeIndex pa = projected.index(g.label(obs[x]));
          const NodeIndex pb = projected.index(g.label(obs[y]));
          if (separated(projected, single(projected, pa), single(projected, pb), pz, Criterion::Sigma)) {
            triples.push_back({obs[x], obs[y], z, true});
          }
        }
      }
    }
  }

  MarkovReport report;
  report.trials = trials;
  for (std::size_t t = 0; t < trials; ++t) {
    const CovMatrix cov = exact_covariance(synthesize(g, trial_seed(seed, t)));
    for (const Triple& tr : triples) {
      double r = 0.0;
      try {
        r = partial_correlation(cov, tr.a, tr.b, tr.z);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::IllConditioned) throw;
        ++report.skipped;
        continue;
      }
      (tr.from_projection ? report.projection_checked : report.checked) += 1;
      double& peak = tr.from_projection ? report.projection_max_abs : report.max_abs;
      peak = std::max(peak, std::abs(r));
      if (std::abs(r) >= tol) report.violations.push_back({t, tr.a, tr.b, tr.z, r, tr.from_projection});
    }
  }
  return report;
}

bool StabilityReport::ok() const {
  return std::all_of(entries.begin(), entries.end(),
                     [&](const StabilityCheckEntry& e) { return e.max_abs < tol; });
}

StabilityReport stability_check(const MixedGraph& g, const NodeSet& s, std::size_t trials,
                                std::uint64_t seed, double tol) {
  if (s.universe() != g.size()) throw Error(ErrorCode::UnknownNode, "set does not belong to this graph");
  if (!s.is_subset_of(g.predictors())) {
    throw Error(ErrorCode::InvalidArgument, "stable sets must contain predictors only");
  }
  const MixedGraph full = g.bidirected_count() > 0 ? expand_bidirected(g) : g;
  const NodeSet fs = full.translate(s, g);
  const NodeIndex y = full.index(g.label(g.response()));

  StabilityReport report;
  report.trials = trials;
  report.tol = tol;
  g.interventions().for_each([&](NodeIndex i) { report.entries.push_back({i, 0.0, 0}); });
  for (std::size_t t = 0; t < trials; ++t) {
    const CovMatrix cov = exact_covariance(synthesize(full, trial_seed(seed, t)));
    for (auto& entry : report.entries) {
      const NodeIndex fi = full.index(g.label(entry.intervention));
      try {
        entry.max_abs = std::max(entry.max_abs, std::abs(partial_correlation(cov, y, fi, fs)));
      } catch (const Error& e) {
        if (e.code() != ErrorCode::IllConditioned) throw;
        ++entry.skipped;
      }
    }
  }
  return report;
}

}  // namespace blanketlab
