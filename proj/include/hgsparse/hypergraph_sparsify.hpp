#pragma once

#include <cmath>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "hgsparse/hypergraph.hpp"
#include "hgsparse/overestimate.hpp"
#include "hgsparse/random.hpp"

namespace hgsparse {

/// Accuracy the reference algorithm requests from its sum estimator. The
/// default here is exact; set sum_estimate_eps to this value to emulate it.
inline constexpr double kReferenceSumEstimateEps = 0.1;

struct SparsifyConfig {
  double eps = 0.25;
  /// M = ceil(sample_constant * n ln n ln max(r, 2) / eps^2)
  double sample_constant = 4.0;
  /// 0 uses the exact sum of z; otherwise the sum is perturbed by a seeded
  /// factor in [1 - e, 1 + e].
  double sum_estimate_eps = 0.0;
  Seed seed = 0;
  /// Settings for the leverage-score overestimate. Its seed is derived from
  /// `seed`; rounds, alpha1 and alpha2 keep their defaults unless changed.
  OverestimateConfig overestimate;

  void validate() const {
    if (!(eps > 0.0) || !std::isfinite(eps)) throw std::invalid_argument("epsilon must be > 0");
    if (!(sample_constant > 0.0)) throw std::invalid_argument("sample constant must be > 0");
    if (!(sum_estimate_eps >= 0.0 && sum_estimate_eps < 1.0))
      throw std::invalid_argument("sum estimate accuracy must lie in [0, 1)");
  }
};

struct SparsifierReport {
  Hypergraph output;
  /// Indices into the input hyperedge list, parallel to output.edges().
  std::vector<EdgeId> source_edges;
  std::size_t samples = 0;
  double s_tilde = 0.0;
  double z_l1 = 0.0;
  std::size_t distinct_edges = 0;
  Seed seed = 0;
  OverestimateResult overestimate;
};

inline std::size_t hypergraph_sample_count(std::size_t n, std::size_t rank, double eps,
                                           double sample_constant) {
  const double nn = static_cast<double>(std::max<std::size_t>(n, 2));
  const double rr = static_cast<double>(std::max<std::size_t>(rank, 2));
  return static_cast<std::size_t>(
      std::ceil(sample_constant * nn * std::log(nn) * std::log(rr) / (eps * eps)));
}

/// M i.i.d. indices with P(e) = z_e / ||z||_1.
inline std::vector<EdgeId> sample_hyperedges(std::span<const double> z, std::size_t count,
                                             Seed seed) {
  const DiscreteSampler sampler(z);
  Rng rng(derive_seed(seed, "multisample"));
  std::vector<EdgeId> out(count);
  for (auto& idx : out) idx = sampler(rng);
  return out;
}

inline double sum_estimate(std::span<const double> z, double eps, Seed seed) {
  if (!(eps >= 0.0 && eps < 1.0))
    throw std::invalid_argument("sum estimate accuracy must lie in [0, 1)");
  double s = 0.0;
  for (double v : z) s += v;
  if (eps == 0.0) return s;
  Rng rng(derive_seed(seed, "sum-estimate"));
  return s * rng.uniform(1.0 - eps, 1.0 + eps);
}

/// Importance samples hyperedges by their overestimates and reweights each
/// draw by w_e s / (M z_e).
inline SparsifierReport sparsify_hypergraph(const Hypergraph& h,
                                            const SparsifyConfig& cfg = {}) {
  cfg.validate();
  SparsifierReport rep;
  rep.seed = cfg.seed;

  OverestimateConfig ocfg = cfg.overestimate;
  ocfg.seed = derive_seed(cfg.seed, "overestimate");
  rep.overestimate = compute_overestimate(h, ocfg);
  const auto& z = rep.overestimate.z;

  for (EdgeId e = 0; e < h.num_edges(); ++e)
    if (h.edge(e).weight > 0.0 && !(z[e] > 0.0))
      throw std::logic_error("hyperedge " + std::to_string(e) +
                             " has positive weight but a zero overestimate");

  rep.samples = hypergraph_sample_count(h.num_vertices(), h.rank(), cfg.eps,
                                        cfg.sample_constant);
  rep.z_l1 = rep.overestimate.l1();
  rep.s_tilde = sum_estimate(z, cfg.sum_estimate_eps, derive_seed(cfg.seed, "sum"));
  const auto sigma = sample_hyperedges(z, rep.samples, derive_seed(cfg.seed, "sample"));

  std::vector<double> acc(h.num_edges(), 0.0);
  const double scale = rep.s_tilde / static_cast<double>(rep.samples);
  for (EdgeId e : sigma) acc[e] += h.edge(e).weight * scale / z[e];

  std::vector<Hyperedge> kept;
  for (EdgeId e = 0; e < h.num_edges(); ++e) {
    if (acc[e] <= 0.0) continue;
    kept.push_back({h.edge(e).vertices, acc[e]});
    rep.source_edges.push_back(e);
  }
  rep.distinct_edges = kept.size();
  rep.output = Hypergraph(h.num_vertices(), std::move(kept));
  return rep;
}

}  // namespace hgsparse
