#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "hgsparse/hypergraph.hpp"
#include "hgsparse/linalg.hpp"
#include "hgsparse/random.hpp"

namespace hgsparse {

/// Exhaustive cut certification is limited to this many vertices.
inline constexpr std::size_t kMaxExhaustiveVertices = 20;

class TooLargeForExhaustive : public std::invalid_argument {
 public:
  explicit TooLargeForExhaustive(std::size_t n)
      : std::invalid_argument("exhaustive cut verification supports at most " +
                              std::to_string(kMaxExhaustiveVertices) + " vertices (got " +
                              std::to_string(n) +
                              "); use the sampled spectral verifier instead") {}
};

struct CutVerification {
  double eps = 0.0;
  double max_rel_error = 0.0;
  /// Side of the worst cut that excludes vertex 0.
  std::vector<Vertex> worst_cut;
  std::size_t cuts_checked = 0;
  /// Cuts with zero weight in H but positive weight in the sparsifier.
  std::size_t zero_cut_violations = 0;

  bool passed() const { return zero_cut_violations == 0 && max_rel_error <= eps; }
};

namespace detail {

struct MaskedEdges {
  std::vector<std::uint32_t> masks;
  std::vector<double> weights;
};

inline MaskedEdges mask_edges(const Hypergraph& h) {
  MaskedEdges m;
  for (const auto& e : h.edges()) {
    if (e.weight == 0.0) continue;
    std::uint32_t mask = 0;
    for (Vertex v : e.vertices) mask |= std::uint32_t{1} << v;
    m.masks.push_back(mask);
    m.weights.push_back(e.weight);
  }
  return m;
}

inline double masked_cut(const MaskedEdges& m, std::uint32_t side, std::uint32_t all) {
  const std::uint32_t other = all & ~side;
  double s = 0.0;
  for (std::size_t i = 0; i < m.masks.size(); ++i)
    if ((m.masks[i] & side) && (m.masks[i] & other)) s += m.weights[i];
  return s;
}

}  // namespace detail

/// Checks |Q_H(S) - Q_H~(S)| <= eps Q_H(S) over all 2^{n-1} - 1 cuts.
inline CutVerification verify_cut_sparsifier(const Hypergraph& h, const Hypergraph& sparse,
                                             double eps) {
  const std::size_t n = h.num_vertices();
  if (sparse.num_vertices() != n)
    throw std::invalid_argument("hypergraphs have different vertex counts");
  if (n > kMaxExhaustiveVertices) throw TooLargeForExhaustive(n);

  CutVerification out;
  out.eps = eps;
  if (n < 2) return out;
  const auto a = detail::mask_edges(h);
  const auto b = detail::mask_edges(sparse);
  const std::uint32_t all = (std::uint32_t{1} << n) - 1;
  std::uint32_t worst = 0;
  // S ranges over nonempty subsets of {1..n-1}; vertex 0 stays outside.
  const std::uint32_t limit = std::uint32_t{1} << (n - 1);
  for (std::uint32_t bits = 1; bits < limit; ++bits) {
    const std::uint32_t side = bits << 1;
    const double qa = detail::masked_cut(a, side, all);
    const double qb = detail::masked_cut(b, side, all);
    ++out.cuts_checked;
    if (qa <= 0.0) {
      if (qb > 0.0) ++out.zero_cut_violations;
      continue;
    }
    const double rel = std::abs(qa - qb) / qa;
    if (worst == 0 || rel > out.max_rel_error) {
      worst = side;
      out.max_rel_error = rel;
    }
  }
  for (Vertex v = 0; v < n; ++v)
    if (worst & (std::uint32_t{1} << v)) out.worst_cut.push_back(v);
  return out;
}

struct SpectralVerification {
  static constexpr const char* kind = "sampled necessary condition";
  double eps = 0.0;
  double max_rel_error = 0.0;
  std::size_t directions_checked = 0;
  std::size_t sign_vectors = 0;
  /// Directions with zero energy in H but positive energy in the sparsifier.
  std::size_t zero_energy_violations = 0;

  bool passed() const { return zero_energy_violations == 0 && max_rel_error <= eps; }
};

/// Accumulates max |Q_H(x) - Q_H~(x)| / Q_H(x) over the given directions.
inline void accumulate_energy_error(const Hypergraph& h, const Hypergraph& sparse,
                                    const std::vector<double>& x, SpectralVerification& rep) {
  const double qa = total_energy(h, x);
  const double qb = total_energy(sparse, x);
  ++rep.directions_checked;
  if (qa <= 0.0) {
    if (qb > 1e-8) ++rep.zero_energy_violations;
    return;
  }
  rep.max_rel_error = std::max(rep.max_rel_error, std::abs(qa - qb) / qa);
}

/// Energy deviation over random Gaussian directions, plus every sign vector
/// when n <= 12. Not a certificate.
inline SpectralVerification verify_spectral_sampled(const Hypergraph& h,
                                                    const Hypergraph& sparse, double eps,
                                                    std::size_t trials, Seed seed) {
  if (trials < 1) throw std::invalid_argument("need at least one trial");
  const std::size_t n = h.num_vertices();
  if (sparse.num_vertices() != n)
    throw std::invalid_argument("hypergraphs have different vertex counts");
  SpectralVerification rep;
  rep.eps = eps;
  Rng rng(derive_seed(seed, "spectral-verify"));
  std::vector<double> x(n);
  for (std::size_t t = 0; t < trials; ++t) {
    for (auto& v : x) v = rng.normal();
    accumulate_energy_error(h, sparse, x, rep);
  }
  if (n >= 2 && n <= 12) {
    // x_0 = +1 fixed; the negated vectors have identical energies.
    for (std::uint32_t bits = 0; bits < (std::uint32_t{1} << (n - 1)); ++bits) {
      x[0] = 1.0;
      for (std::size_t v = 1; v < n; ++v) x[v] = (bits >> (v - 1)) & 1U ? -1.0 : 1.0;
      accumulate_energy_error(h, sparse, x, rep);
      ++rep.sign_vectors;
    }
  }
  return rep;
}

struct EnergyComparison {
  std::size_t trials = 0;
  std::size_t failures = 0;
  /// Failures of Q_H(v) >= v^T L v, the intermediate step.
  std::size_t intermediate_failures = 0;
  /// min over trials of Q_H(L^{+/2} x) - ||x||^2
  double min_slack = std::numeric_limits<double>::infinity();

  bool passed() const { return failures == 0 && intermediate_failures == 0; }
};

/// For random x orthogonal to the kernel, checks
/// Q_H(L^{+/2} x) >= (L^{+/2} x)^T L (L^{+/2} x) = ||x||^2 - 1e-8 where L is
/// the Laplacian of the underlying graph u of h.
inline EnergyComparison energy_comparison(const Hypergraph& h, const UnderlyingGraph& u,
                                          std::size_t trials, Seed seed) {
  const auto lap = build_laplacian(flatten(u));
  const Eigen::MatrixXd half = pseudo_inverse_sqrt(lap);
  const auto n = static_cast<Eigen::Index>(h.num_vertices());
  EnergyComparison rep;
  Rng rng(derive_seed(seed, "energy-comparison"));
  for (std::size_t t = 0; t < trials; ++t) {
    Eigen::VectorXd x(n);
    for (Eigen::Index i = 0; i < n; ++i) x[i] = rng.normal();
    x = lap.project(x);
    const Eigen::VectorXd v = half * x;
    const std::vector<double> vv(v.data(), v.data() + v.size());
    const double qh = total_energy(h, vv);
    const double quad = lap.quadratic_form(v);
    const double norm2 = x.squaredNorm();
    const double tol = 1e-8;
    ++rep.trials;
    if (qh < quad - tol) ++rep.intermediate_failures;
    if (qh < norm2 - tol) ++rep.failures;
    rep.min_slack = std::min(rep.min_slack, qh - norm2);
  }
  return rep;
}

inline bool energy_comparison_check(const Hypergraph& h, const UnderlyingGraph& u,
                                    std::size_t trials, Seed seed) {
  return energy_comparison(h, u, trials, seed).passed();
}

/// sum_f c_f R_f <= n - #components + 1e-9
inline bool foster_check(const WeightedGraph& g) {
  const double bound = static_cast<double>(g.num_vertices()) -
                       static_cast<double>(connected_components(g).count);
  return foster_sum(g) <= bound + 1e-9;
}

inline bool foster_check(const UnderlyingGraph& u) { return foster_check(flatten(u)); }

}  // namespace hgsparse
