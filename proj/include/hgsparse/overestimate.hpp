#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "hgsparse/graph_sparsify.hpp"
#include "hgsparse/hypergraph.hpp"
#include "hgsparse/linalg.hpp"
#include "hgsparse/random.hpp"

namespace hgsparse {

/// What to do when graph sparsification deletes every star edge of a
/// positive-weight hyperedge.
enum class DeadStarPolicy {
  /// Reuse the pre-sparsification star weights for this round's leverage
  /// and restart the next round from the uniform star.
  Uniform,
  Fail,
};

struct OverestimateConfig {
  /// Number of reweighting rounds; 0 selects default_rounds(rank).
  std::size_t rounds = 0;
  double alpha1 = 0.1;  // graph sparsifier accuracy
  double alpha2 = 0.1;  // resistance sketch accuracy
  Seed seed = 0;
  /// Skip sparsification and use exact resistances.
  bool exact = false;
  DeadStarPolicy dead_star = DeadStarPolicy::Uniform;
  AnchorRule anchor = AnchorRule::min_vertex();
  GraphSparsifyConfig graph;

  void validate() const {
    if (!(alpha1 > 0.0 && alpha1 < 1.0)) throw std::invalid_argument("alpha1 must lie in (0, 1)");
    if (!(alpha2 > 0.0 && alpha2 < 1.0)) throw std::invalid_argument("alpha2 must lie in (0, 1)");
  }
};

/// max(1, ceil(log2(max(2, r - 1))))
inline std::size_t default_rounds(std::size_t rank) {
  const double r1 = static_cast<double>(std::max<std::size_t>(rank, 3) - 1);
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(std::log2(r1))));
}

inline double combined_accuracy(double alpha1, double alpha2) {
  return (alpha1 + alpha2) / (1.0 - alpha1);
}

/// 2 (1 + alpha3) exp(ln r / T)
inline double overestimate_constant(double alpha1, double alpha2, std::size_t rank,
                                    std::size_t rounds) {
  const double r = static_cast<double>(std::max<std::size_t>(rank, 2));
  return 2.0 * (1.0 + combined_accuracy(alpha1, alpha2)) *
         std::exp(std::log(r) / static_cast<double>(rounds));
}

struct OverestimateRound {
  /// Sparsified underlying graph of this round.
  UnderlyingGraph sparsified;
  /// Star weights the leverage terms were taken from: the sparsified weights,
  /// or the pre-sparsification weights on dead stars.
  std::vector<double> weights;
  /// Resistance estimate per label, 0 where `weights` is 0.
  std::vector<double> resistance;
  /// l_{e,g} = weights_g * resistance_g
  std::vector<double> leverage;
  std::vector<EdgeId> dead_stars;
};

struct OverestimateResult {
  std::vector<double> z;
  std::vector<OverestimateRound> rounds;
  /// Star weights entering each round, plus the final reweighting (T + 1 entries).
  std::vector<UnderlyingGraph> iterates;
  std::size_t num_vertices = 0;
  std::size_t rank = 0;
  double alpha1 = 0.0;
  double alpha2 = 0.0;
  double alpha3 = 0.0;
  double c1 = 0.0;
  /// (1 + alpha2) C1 n
  double nu_bound = 0.0;

  double l1() const {
    double s = 0.0;
    for (double v : z) s += v;
    return s;
  }
};

/// New star weights proportional to c_f R_f, renormalized to w_e per star.
/// Stars with zero resistance-weighted mass revert to w_e / (|e| - 1).
inline UnderlyingGraph weight_compute(const UnderlyingGraph& u,
                                      std::span<const double> resistance) {
  if (resistance.size() != u.num_labels())
    throw std::invalid_argument("resistance table has wrong size");
  for (double r : resistance)
    if (r < 0.0 || std::isnan(r)) throw std::invalid_argument("negative resistance");
  const auto& lay = u.layout();
  std::vector<double> out(u.num_labels(), 0.0);
  for (EdgeId e = 0; e < lay.num_hyperedges(); ++e) {
    const double w = lay.hyperedge_weight(e);
    double mass = 0.0;
    for (auto f = lay.begin(e); f < lay.end(e); ++f) mass += u.weight(f) * resistance[f];
    if (mass > 0.0) {
      for (auto f = lay.begin(e); f < lay.end(e); ++f)
        out[f] = u.weight(f) * resistance[f] / mass * w;
    } else {
      const double c = w / static_cast<double>(lay.end(e) - lay.begin(e));
      for (auto f = lay.begin(e); f < lay.end(e); ++f) out[f] = c;
    }
  }
  return with_weights(u, std::move(out));
}

/// Iterative reweighting of star underlying graphs; returns a hyperedge
/// leverage-score overestimate together with the per-round data.
inline OverestimateResult compute_overestimate(const Hypergraph& h,
                                               const OverestimateConfig& cfg = {}) {
  cfg.validate();
  if (h.num_edges() == 0) throw std::invalid_argument("hypergraph has no hyperedges");
  const std::size_t rounds = cfg.rounds ? cfg.rounds : default_rounds(h.rank());

  OverestimateResult res;
  res.num_vertices = h.num_vertices();
  res.rank = h.rank();
  res.alpha1 = cfg.alpha1;
  res.alpha2 = cfg.alpha2;
  res.alpha3 = combined_accuracy(cfg.alpha1, cfg.alpha2);
  res.c1 = overestimate_constant(cfg.alpha1, cfg.alpha2, h.rank(), rounds);
  res.nu_bound = (1.0 + cfg.alpha2) * res.c1 * static_cast<double>(h.num_vertices());

  UnderlyingGraph current = init_underlying(h, cfg.anchor);
  const auto layout = current.shared_layout();
  const auto& lay = *layout;
  const std::size_t labels = current.num_labels();
  std::vector<double> star_sum(h.num_edges(), 0.0);

  for (std::size_t t = 0; t < rounds; ++t) {
    res.iterates.push_back(current);
    const Seed round_seed = derive_seed(cfg.seed, "overestimate-round", t);

    OverestimateRound round{current, current.weights(), std::vector<double>(labels, 0.0),
                            std::vector<double>(labels, 0.0), {}};
    if (cfg.exact) {
      ResistanceOracle oracle(flatten(current), cfg.graph.solver);
      for (std::size_t f = 0; f < labels; ++f)
        if (current.weight(f) > 0.0)
          round.resistance[f] = oracle(lay.label(f).anchor, lay.label(f).other);
    } else {
      auto sparse = sparsify_graph_detailed(current, cfg.alpha1,
                                            derive_seed(round_seed, "sparsify"), cfg.graph);
      round.sparsified = sparse.graph;
      round.weights = sparse.graph.weights();
      const auto sketch = build_sketch(flatten(sparse.graph), cfg.alpha2,
                                       derive_seed(round_seed, "sketch"), cfg.graph.solver);
      for (std::size_t f = 0; f < labels; ++f)
        if (round.weights[f] > 0.0)
          round.resistance[f] = sketch(lay.label(f).anchor, lay.label(f).other);

      for (EdgeId e = 0; e < h.num_edges(); ++e) {
        if (lay.hyperedge_weight(e) <= 0.0 || round.sparsified.star_mass(e) > 0.0) continue;
        if (cfg.dead_star == DeadStarPolicy::Fail)
          throw std::runtime_error("graph sparsification removed the whole star of hyperedge " +
                                   std::to_string(e));
        round.dead_stars.push_back(e);
        for (auto f = lay.begin(e); f < lay.end(e); ++f) {
          round.weights[f] = current.weight(f);
          round.resistance[f] = current.weight(f) > 0.0 ? sparse.resistance[f] : 0.0;
        }
      }
    }

    for (std::size_t f = 0; f < labels; ++f)
      round.leverage[f] = round.weights[f] * round.resistance[f];
    for (EdgeId e = 0; e < h.num_edges(); ++e)
      for (auto f = lay.begin(e); f < lay.end(e); ++f) star_sum[e] += round.leverage[f];

    // Dead stars carry zero sparsified mass, so they take the uniform branch.
    current = weight_compute(round.sparsified, round.resistance);
    res.rounds.push_back(std::move(round));
  }
  res.iterates.push_back(current);

  res.z.resize(h.num_edges());
  for (EdgeId e = 0; e < h.num_edges(); ++e)
    res.z[e] = res.c1 * star_sum[e] / static_cast<double>(rounds);
  return res;
}

/// w_e times the largest exact resistance over all vertex pairs of e, measured
/// in flatten(u). Zero-weight hyperedges score 0.
inline std::vector<double> leverage_exact(const Hypergraph& h, const UnderlyingGraph& u,
                                          const SolverOptions& opt = {}) {
  ResistanceOracle oracle(flatten(u), opt);
  std::vector<double> out(h.num_edges(), 0.0);
  for (EdgeId e = 0; e < h.num_edges(); ++e) {
    const auto& edge = h.edge(e);
    if (edge.weight <= 0.0) continue;
    double worst = 0.0;
    for (std::size_t i = 0; i < edge.vertices.size(); ++i)
      for (std::size_t j = i + 1; j < edge.vertices.size(); ++j)
        worst = std::max(worst, oracle(edge.vertices[i], edge.vertices[j]));
    out[e] = edge.weight * worst;
  }
  return out;
}

struct OverestimateViolation {
  EdgeId edge;
  double z;
  double leverage;  // infinite when the witness leaves e disconnected
};

struct OverestimateValidation {
  std::vector<OverestimateViolation> violations;
  std::vector<double> leverage;
  double l1 = 0.0;
  double nu_bound = 0.0;
  /// 2 (1 + alpha2) C1 n, the looser constant quoted for the end-to-end bound.
  double nu_bound_loose = 0.0;
  bool l1_ok = false;
  /// Largest relative deviation of the averaged witness from sum_f c_f = w_e
  /// before it was renormalized.
  double witness_deviation = 0.0;
  double min_margin = 0.0;  // min over e of (z_e - l_e) / max(l_e, tiny)

  bool ok() const { return violations.empty() && l1_ok; }
};

/// Averages the per-round star weights into a witness underlying graph,
/// renormalizes each star to w_e and checks z_e >= l_e and ||z||_1 <= nu.
inline OverestimateValidation validate_overestimate(const Hypergraph& h,
                                                    const OverestimateResult& res,
                                                    const SolverOptions& opt = {}) {
  if (res.rounds.empty()) throw std::invalid_argument("overestimate carries no round data");
  OverestimateValidation out;
  out.l1 = res.l1();
  out.nu_bound = res.nu_bound;
  out.nu_bound_loose = 2.0 * res.nu_bound;
  out.l1_ok = out.l1 <= res.nu_bound * (1.0 + 1e-12);

  const auto& base = res.rounds.front().sparsified;
  const auto& lay = base.layout();
  std::vector<double> avg(base.num_labels(), 0.0);
  for (const auto& r : res.rounds)
    for (std::size_t f = 0; f < avg.size(); ++f) avg[f] += r.weights[f];
  for (double& c : avg) c /= static_cast<double>(res.rounds.size());
  out.witness_deviation = with_weights(base, avg).max_star_deviation();

  std::vector<bool> infeasible(h.num_edges(), false);
  for (EdgeId e = 0; e < h.num_edges(); ++e) {
    const double w = lay.hyperedge_weight(e);
    double mass = 0.0;
    for (auto f = lay.begin(e); f < lay.end(e); ++f) mass += avg[f];
    if (mass > 0.0) {
      for (auto f = lay.begin(e); f < lay.end(e); ++f) avg[f] *= w / mass;
    } else if (w > 0.0) {
      infeasible[e] = true;
    }
  }
  const auto witness = with_weights(base, std::move(avg));

  ResistanceOracle oracle(flatten(witness), opt);
  out.leverage.assign(h.num_edges(), 0.0);
  out.min_margin = std::numeric_limits<double>::infinity();
  for (EdgeId e = 0; e < h.num_edges(); ++e) {
    const auto& edge = h.edge(e);
    if (edge.weight <= 0.0) continue;
    double worst = 0.0;
    bool disconnected = infeasible[e];
    for (std::size_t i = 0; i < edge.vertices.size() && !disconnected; ++i)
      for (std::size_t j = i + 1; j < edge.vertices.size(); ++j) {
        if (!oracle.components().same(edge.vertices[i], edge.vertices[j])) {
          disconnected = true;
          break;
        }
        worst = std::max(worst, oracle(edge.vertices[i], edge.vertices[j]));
      }
    const double lev = disconnected ? std::numeric_limits<double>::infinity()
                                    : edge.weight * worst;
    out.leverage[e] = lev;
    const double z = res.z[e];
    out.min_margin = std::min(out.min_margin, (z - lev) / std::max(lev, 1e-300));
    if (z < lev * (1.0 - 1e-9)) out.violations.push_back({e, z, lev});
  }
  return out;
}

}  // namespace hgsparse
