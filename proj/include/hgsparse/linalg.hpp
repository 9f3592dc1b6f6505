#pragma once

#include <Eigen/Dense>
#include <Eigen/IterativeLinearSolvers>
#include <Eigen/Sparse>

#include <algorithm>
#include <cmath>
#include <memory>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "hgsparse/hypergraph.hpp"
#include "hgsparse/random.hpp"

namespace hgsparse {

class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Resistance query between vertices in different connected components.
class DisconnectedError : public std::runtime_error {
 public:
  DisconnectedError(Vertex a, Vertex b)
      : std::runtime_error("vertices " + std::to_string(a) + " and " +
                           std::to_string(b) +
                           " are disconnected: effective resistance is infinite"),
        a_(a), b_(b) {}
  Vertex a() const { return a_; }
  Vertex b() const { return b_; }

 private:
  Vertex a_, b_;
};

struct SolverOptions {
  /// Dense eigendecomposition up to this many vertices, conjugate gradient above.
  std::size_t dense_limit = 512;
  double tolerance = 1e-10;
  std::size_t iteration_factor = 20;
};

/// Connected components over positive-weight edges.
struct Components {
  std::vector<std::size_t> label;
  std::size_t count = 0;

  bool same(Vertex a, Vertex b) const { return label[a] == label[b]; }

  std::vector<std::size_t> sizes() const {
    std::vector<std::size_t> s(count, 0);
    for (auto l : label) ++s[l];
    return s;
  }
};

inline Components connected_components(const WeightedGraph& g) {
  const std::size_t n = g.num_vertices();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& e : g.edges()) {
    if (e.weight <= 0.0) continue;
    auto a = find(e.u), b = find(e.v);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  Components c;
  c.label.assign(n, 0);
  std::vector<std::size_t> id(n, n);
  for (std::size_t v = 0; v < n; ++v) {
    auto r = find(v);
    if (id[r] == n) id[r] = c.count++;
    c.label[v] = id[r];
  }
  return c;
}

/// L = D - A, kept sparse; a dense copy exists for small n.
class Laplacian {
 public:
  Laplacian(std::size_t n, Eigen::SparseMatrix<double> sparse, Components comps,
            std::size_t dense_limit)
      : n_(n), sparse_(std::move(sparse)), components_(std::move(comps)) {
    if (n_ <= dense_limit) dense_ = Eigen::MatrixXd(sparse_);
  }

  std::size_t size() const { return n_; }
  const Eigen::SparseMatrix<double>& sparse() const { return sparse_; }
  bool has_dense() const { return dense_.has_value(); }
  const Eigen::MatrixXd& dense() const {
    if (!dense_) throw std::logic_error("dense Laplacian not materialized");
    return *dense_;
  }
  Eigen::MatrixXd to_dense() const { return dense_ ? *dense_ : Eigen::MatrixXd(sparse_); }
  const Components& components() const { return components_; }

  double quadratic_form(const Eigen::VectorXd& x) const { return x.dot(sparse_ * x); }

  /// Removes the per-component mean, i.e. projects onto range(L).
  Eigen::VectorXd project(const Eigen::VectorXd& b) const {
    std::vector<double> sum(components_.count, 0.0);
    auto sizes = components_.sizes();
    for (std::size_t v = 0; v < n_; ++v) sum[components_.label[v]] += b[v];
    Eigen::VectorXd out = b;
    for (std::size_t v = 0; v < n_; ++v) {
      auto c = components_.label[v];
      out[v] -= sum[c] / static_cast<double>(sizes[c]);
    }
    return out;
  }

 private:
  std::size_t n_;
  Eigen::SparseMatrix<double> sparse_;
  std::optional<Eigen::MatrixXd> dense_;
  Components components_;
};

inline Laplacian build_laplacian(const WeightedGraph& g, const SolverOptions& opt = {}) {
  const auto n = static_cast<Eigen::Index>(g.num_vertices());
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(4 * g.num_edges());
  for (const auto& e : g.edges()) {
    if (e.weight == 0.0) continue;
    const auto u = static_cast<Eigen::Index>(e.u), v = static_cast<Eigen::Index>(e.v);
    trip.emplace_back(u, u, e.weight);
    trip.emplace_back(v, v, e.weight);
    trip.emplace_back(u, v, -e.weight);
    trip.emplace_back(v, u, -e.weight);
  }
  Eigen::SparseMatrix<double> m(n, n);
  m.setFromTriplets(trip.begin(), trip.end());  // duplicates are summed
  return Laplacian(g.num_vertices(), std::move(m), connected_components(g),
                   opt.dense_limit);
}

/// Eigenpairs of a Laplacian with the kernel (one zero eigenvalue per
/// component) identified by count rather than by a threshold.
struct LaplacianSpectrum {
  Eigen::VectorXd eigenvalues;   // ascending
  Eigen::MatrixXd eigenvectors;  // columns
  std::size_t kernel_dim = 0;

  Eigen::Index range_begin() const { return static_cast<Eigen::Index>(kernel_dim); }
  Eigen::Index range_dim() const { return eigenvalues.size() - range_begin(); }

  /// sum over range eigenpairs of f(lambda) v v^T
  template <class F>
  Eigen::MatrixXd spectral_function(F f) const {
    const auto k = range_dim();
    const auto v = eigenvectors.rightCols(k);
    Eigen::VectorXd d = eigenvalues.tail(k).unaryExpr(f);
    return v * d.asDiagonal() * v.transpose();
  }
};

inline LaplacianSpectrum laplacian_spectrum(const Laplacian& l) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(l.to_dense());
  if (es.info() != Eigen::Success) throw SolverError("eigendecomposition failed");
  return {es.eigenvalues(), es.eigenvectors(), l.components().count};
}

inline Eigen::MatrixXd pseudo_inverse(const Laplacian& l) {
  return laplacian_spectrum(l).spectral_function([](double x) { return 1.0 / x; });
}

/// L^{+/2}
inline Eigen::MatrixXd pseudo_inverse_sqrt(const Laplacian& l) {
  return laplacian_spectrum(l).spectral_function(
      [](double x) { return 1.0 / std::sqrt(x); });
}

/// Applies L^+. Dense pseudo-inverse for small graphs, Jacobi-preconditioned
/// conjugate gradient otherwise. Holds a pointer to the Laplacian.
class LaplacianSolver {
 public:
  using CG = Eigen::ConjugateGradient<Eigen::SparseMatrix<double>,
                                      Eigen::Lower | Eigen::Upper,
                                      Eigen::DiagonalPreconditioner<double>>;

  explicit LaplacianSolver(const Laplacian& l, const SolverOptions& opt = {})
      : l_(&l), opt_(opt) {
    if (l.has_dense()) {
      pinv_ = pseudo_inverse(l);
      return;
    }
    regularized_ = l.sparse();
    // Isolated vertices have a zero diagonal; a unit one keeps the
    // preconditioner finite. Their right-hand side is zero after projection.
    for (Eigen::Index v = 0; v < regularized_.rows(); ++v)
      if (regularized_.coeff(v, v) == 0.0) regularized_.coeffRef(v, v) = 1.0;
    cg_ = std::make_unique<CG>();
    cg_->setTolerance(opt_.tolerance);
    cg_->setMaxIterations(static_cast<Eigen::Index>(opt_.iteration_factor * l.size()));
    cg_->compute(regularized_);
  }

  LaplacianSolver(const LaplacianSolver&) = delete;
  LaplacianSolver& operator=(const LaplacianSolver&) = delete;

  bool is_dense() const { return pinv_.has_value(); }
  const Eigen::MatrixXd& dense_pseudo_inverse() const { return *pinv_; }

  Eigen::VectorXd solve(const Eigen::VectorXd& b) const {
    if (static_cast<std::size_t>(b.size()) != l_->size())
      throw std::invalid_argument("right-hand side has wrong dimension");
    const Eigen::VectorXd pb = l_->project(b);
    if (pinv_) return *pinv_ * pb;
    Eigen::VectorXd x = cg_->solve(pb);
    if (cg_->info() != Eigen::Success)
      throw SolverError("conjugate gradient did not converge within " +
                        std::to_string(cg_->maxIterations()) + " iterations (residual " +
                        std::to_string(cg_->error()) + ")");
    return l_->project(x);
  }

 private:
  const Laplacian* l_;
  SolverOptions opt_;
  std::optional<Eigen::MatrixXd> pinv_;
  Eigen::SparseMatrix<double> regularized_;
  std::unique_ptr<CG> cg_;
};

inline Eigen::VectorXd solve_laplacian(const Laplacian& l, const Eigen::VectorXd& b,
                                       const SolverOptions& opt = {}) {
  return LaplacianSolver(l, opt).solve(b);
}

/// Exact pairwise effective resistances of one graph.
class ResistanceOracle {
 public:
  explicit ResistanceOracle(const WeightedGraph& g, const SolverOptions& opt = {})
      : lap_(build_laplacian(g, opt)), solver_(lap_, opt) {}

  ResistanceOracle(const ResistanceOracle&) = delete;
  ResistanceOracle& operator=(const ResistanceOracle&) = delete;

  const Laplacian& laplacian() const { return lap_; }
  const Components& components() const { return lap_.components(); }

  double operator()(Vertex a, Vertex b) const {
    if (a >= lap_.size() || b >= lap_.size())
      throw std::out_of_range("resistance query vertex out of range");
    if (a == b) return 0.0;
    if (!lap_.components().same(a, b)) throw DisconnectedError(a, b);
    if (solver_.is_dense()) {
      const auto& p = solver_.dense_pseudo_inverse();
      const auto i = static_cast<Eigen::Index>(a), j = static_cast<Eigen::Index>(b);
      return p(i, i) + p(j, j) - 2.0 * p(i, j);
    }
    Eigen::VectorXd chi = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(lap_.size()));
    chi[static_cast<Eigen::Index>(a)] = 1.0;
    chi[static_cast<Eigen::Index>(b)] = -1.0;
    return chi.dot(solver_.solve(chi));
  }

 private:
  Laplacian lap_;
  LaplacianSolver solver_;
};

inline double effective_resistance_exact(const WeightedGraph& g, Vertex a, Vertex b,
                                         const SolverOptions& opt = {}) {
  if (a == b) throw std::invalid_argument("resistance needs two distinct vertices");
  return ResistanceOracle(g, opt)(a, b);
}

/// Number of sketch rows for n vertices at relative accuracy eps (natural log).
inline std::size_t sketch_rows(std::size_t n, double eps) {
  if (!(eps > 0.0 && eps < 1.0))
    throw std::invalid_argument("sketch accuracy must lie in (0, 1)");
  const double p = std::ceil(24.0 * std::log(static_cast<double>(std::max<std::size_t>(n, 2))) /
                             (eps * eps));
  return static_cast<std::size_t>(p);
}

/// p x n matrix Z with ||Z (delta_a - delta_b)||^2 ~ R_ab.
class ResistanceSketch {
 public:
  static constexpr double kFloor = 1e-15;

  ResistanceSketch(Eigen::MatrixXd z, double eps, Seed seed, Components comps)
      : z_(std::move(z)), eps_(eps), seed_(seed), components_(std::move(comps)) {}

  std::size_t rows() const { return static_cast<std::size_t>(z_.rows()); }
  std::size_t num_vertices() const { return static_cast<std::size_t>(z_.cols()); }
  double eps() const { return eps_; }
  Seed seed() const { return seed_; }
  const Eigen::MatrixXd& matrix() const { return z_; }
  const Components& components() const { return components_; }

  /// Unclamped squared distance; zero when a == b.
  double raw(Vertex a, Vertex b) const {
    return (z_.col(static_cast<Eigen::Index>(a)) - z_.col(static_cast<Eigen::Index>(b)))
        .squaredNorm();
  }

  double operator()(Vertex a, Vertex b) const {
    if (a >= num_vertices() || b >= num_vertices())
      throw std::out_of_range("sketch query vertex out of range");
    if (!components_.same(a, b)) throw DisconnectedError(a, b);
    return std::max(raw(a, b), kFloor);
  }

 private:
  Eigen::MatrixXd z_;
  double eps_;
  Seed seed_;
  Components components_;
};

/// Z = Pi W^{1/2} B L^+ with Pi a p x |F| matrix of independent +-1/sqrt(p).
inline ResistanceSketch build_sketch(const WeightedGraph& g, double eps, Seed seed,
                                     const SolverOptions& opt = {}) {
  const std::size_t n = g.num_vertices();
  const std::size_t p = sketch_rows(n, eps);
  const auto rows = static_cast<Eigen::Index>(p);
  const double scale = 1.0 / std::sqrt(static_cast<double>(p));

  std::vector<GraphEdge> support;
  for (const auto& e : g.edges())
    if (e.weight > 0.0) support.push_back(e);

  // Y^T where Y = Pi W^{1/2} B; n x p, accumulated edge by edge.
  Eigen::MatrixXd y = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), rows);
  Rng rng(derive_seed(seed, "sketch-projection"));
  for (const auto& e : support) {
    const double s = std::sqrt(e.weight) * scale;
    std::uint64_t bits = 0;
    int left = 0;
    for (Eigen::Index i = 0; i < rows; ++i) {
      if (left == 0) {
        bits = rng.bits();
        left = 64;
      }
      const double v = (bits & 1U) ? s : -s;
      bits >>= 1;
      --left;
      y(static_cast<Eigen::Index>(e.u), i) += v;
      y(static_cast<Eigen::Index>(e.v), i) -= v;
    }
  }

  const Laplacian lap = build_laplacian(g, opt);
  const LaplacianSolver solver(lap, opt);
  // Z^T = L^+ Y^T since L^+ is symmetric.
  Eigen::MatrixXd zt(static_cast<Eigen::Index>(n), rows);
  if (solver.is_dense()) {
    zt.noalias() = solver.dense_pseudo_inverse() * y;
  } else {
    for (Eigen::Index i = 0; i < rows; ++i) zt.col(i) = solver.solve(y.col(i));
  }
  return ResistanceSketch(zt.transpose(), eps, seed, lap.components());
}

inline double sketch_resistance(const ResistanceSketch& s, Vertex a, Vertex b) {
  return s(a, b);
}

/// sum_f c_f R_f with exact resistances; equals n - #components.
inline double foster_sum(const WeightedGraph& g, const SolverOptions& opt = {}) {
  ResistanceOracle oracle(g, opt);
  double s = 0.0;
  for (const auto& e : g.edges())
    if (e.weight > 0.0) s += e.weight * oracle(e.u, e.v);
  return s;
}

/// Eigenvalues of the pencil (approx, base) restricted to range(base), i.e.
/// the spectrum of L_base^{+/2} L_approx L_base^{+/2} on range(L_base).
inline Eigen::VectorXd pencil_eigenvalues(const Laplacian& approx, const Laplacian& base) {
  const auto spectrum = laplacian_spectrum(base);
  const auto k = spectrum.range_dim();
  Eigen::MatrixXd v = spectrum.eigenvectors.rightCols(k);
  Eigen::VectorXd inv_sqrt = spectrum.eigenvalues.tail(k).cwiseSqrt().cwiseInverse();
  Eigen::MatrixXd m = inv_sqrt.asDiagonal() * (v.transpose() * approx.to_dense() * v) *
                      inv_sqrt.asDiagonal();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw SolverError("pencil eigensolve failed");
  return es.eigenvalues();
}

}  // namespace hgsparse
