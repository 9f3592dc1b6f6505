#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

#include "hgsparse/hypergraph.hpp"
#include "hgsparse/linalg.hpp"
#include "hgsparse/random.hpp"

namespace hgsparse {

struct GraphSparsifyConfig {
  /// q = ceil(oversampling * n ln n / eps^2)
  double oversampling = 9.0;
  /// Accuracy of the resistance sketch that drives the sampling probabilities.
  double sketch_eps = 0.3;
  /// Sample with exact resistances instead of a sketch.
  bool exact_resistances = false;
  SolverOptions solver;
};

struct GraphSparsifyResult {
  UnderlyingGraph graph;
  /// Resistance estimate used for each input label; 0 where the input weight is 0.
  std::vector<double> resistance;
  std::size_t draws = 0;
};

inline std::size_t graph_sample_count(std::size_t n, double eps, double oversampling) {
  const double nn = static_cast<double>(std::max<std::size_t>(n, 2));
  return static_cast<std::size_t>(std::ceil(oversampling * nn * std::log(nn) / (eps * eps)));
}

/// Splits `total` draws over components in proportion to their spanning-tree
/// size n_k - 1, which is the exact Foster mass of each component.
inline std::vector<std::size_t> allocate_draws(std::size_t total,
                                               const std::vector<double>& shares) {
  double sum = 0.0;
  for (double s : shares) sum += s;
  std::vector<std::size_t> out(shares.size(), 0);
  if (sum <= 0.0) return out;
  std::vector<std::pair<double, std::size_t>> remainders;
  std::size_t used = 0;
  for (std::size_t k = 0; k < shares.size(); ++k) {
    const double exact = static_cast<double>(total) * shares[k] / sum;
    out[k] = static_cast<std::size_t>(std::floor(exact));
    used += out[k];
    remainders.emplace_back(exact - std::floor(exact), k);
  }
  std::stable_sort(remainders.begin(), remainders.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  for (std::size_t i = 0; used < total && i < remainders.size(); ++i, ++used)
    ++out[remainders[i].second];
  return out;
}

/// Importance-samples labeled edges with probability proportional to
/// c_f * R_f and reweights each draw by c_f / (q p_f).
inline GraphSparsifyResult sparsify_graph_detailed(const UnderlyingGraph& u, double eps,
                                                   Seed seed,
                                                   const GraphSparsifyConfig& cfg = {}) {
  if (!(eps > 0.0 && eps < 1.0))
    throw std::invalid_argument("graph sparsifier accuracy must lie in (0, 1)");
  const std::size_t labels = u.num_labels();
  const WeightedGraph flat = flatten(u);
  const Components comps = connected_components(flat);

  GraphSparsifyResult result{with_weights(u, std::vector<double>(labels, 0.0)),
                             std::vector<double>(labels, 0.0), 0};
  bool any = false;
  for (double c : u.weights()) any = any || c > 0.0;
  if (!any) return result;

  if (cfg.exact_resistances) {
    ResistanceOracle oracle(flat, cfg.solver);
    for (std::size_t f = 0; f < labels; ++f)
      if (u.weight(f) > 0.0) {
        const auto& lab = u.layout().label(f);
        result.resistance[f] = oracle(lab.anchor, lab.other);
      }
  } else {
    const auto sketch =
        build_sketch(flat, cfg.sketch_eps, derive_seed(seed, "gsparse-sketch"), cfg.solver);
    for (std::size_t f = 0; f < labels; ++f)
      if (u.weight(f) > 0.0) {
        const auto& lab = u.layout().label(f);
        result.resistance[f] = sketch(lab.anchor, lab.other);
      }
  }

  // Per-component label lists and sampling masses.
  std::vector<std::vector<std::size_t>> members(comps.count);
  for (std::size_t f = 0; f < labels; ++f)
    if (u.weight(f) > 0.0) members[comps.label[u.layout().label(f).anchor]].push_back(f);
  const auto sizes = comps.sizes();
  std::vector<double> shares(comps.count, 0.0);
  for (std::size_t k = 0; k < comps.count; ++k)
    if (!members[k].empty()) shares[k] = static_cast<double>(sizes[k] - 1);

  const std::size_t q = graph_sample_count(u.num_vertices(), eps, cfg.oversampling);
  const auto draws = allocate_draws(q, shares);
  result.draws = q;

  std::vector<double> out(labels, 0.0);
  Rng rng(derive_seed(seed, "gsparse-draws"));
  for (std::size_t k = 0; k < comps.count; ++k) {
    if (members[k].empty() || draws[k] == 0) continue;
    std::vector<double> mass;
    mass.reserve(members[k].size());
    for (auto f : members[k]) mass.push_back(u.weight(f) * result.resistance[f]);
    const DiscreteSampler sampler(mass);
    const double per_draw = sampler.total() / static_cast<double>(draws[k]);
    for (std::size_t i = 0; i < draws[k]; ++i) {
      const auto f = members[k][sampler(rng)];
      // c_f / (q_k * c_f R_f / mass_k)
      out[f] += per_draw / result.resistance[f];
    }
  }
  result.graph = with_weights(u, std::move(out));
  return result;
}

inline UnderlyingGraph sparsify_graph(const UnderlyingGraph& u, double eps, Seed seed,
                                      const GraphSparsifyConfig& cfg = {}) {
  return sparsify_graph_detailed(u, eps, seed, cfg).graph;
}

}  // namespace hgsparse
