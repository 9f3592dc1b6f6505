#pragma once

// Random instance generators and brute-force oracles shared by the tests.

#include <Eigen/Dense>

#include <algorithm>
#include <cstdint>
#include <limits>
#include <vector>

#include "hgsparse/hgsparse.hpp"

namespace hgtest {

using namespace hgsparse;

inline std::vector<Vertex> random_subset(Rng& rng, std::size_t n, std::size_t k) {
  std::vector<Vertex> perm(n);
  for (std::size_t v = 0; v < n; ++v) perm[v] = v;
  for (std::size_t j = 0; j < k; ++j) std::swap(perm[j], perm[j + rng.below(n - j)]);
  perm.resize(k);
  return perm;
}

/// m hyperedges of size 2..max_rank with weights in [lo, hi]. When `connected`
/// the first n - 1 hyperedges each attach vertex i + 1 to some vertex <= i.
inline Hypergraph random_hypergraph(std::size_t n, std::size_t m, std::size_t max_rank,
                                    Seed seed, bool connected = true, double lo = 0.5,
                                    double hi = 2.0) {
  Rng rng(seed);
  max_rank = std::min(max_rank, n);
  std::vector<Hyperedge> edges;
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t k = 2 + rng.below(max_rank - 1);
    std::vector<Vertex> vs;
    if (connected && i + 1 < n) {
      vs = {i + 1, rng.below(i + 1)};
      while (vs.size() < k) {
        const Vertex v = rng.below(n);
        if (std::find(vs.begin(), vs.end(), v) == vs.end()) vs.push_back(v);
      }
    } else {
      vs = random_subset(rng, n, k);
    }
    edges.push_back({std::move(vs), rng.uniform(lo, hi)});
  }
  return Hypergraph(n, std::move(edges));
}

/// Random graph; with `connected` the first n - 1 edges form a random tree.
inline WeightedGraph random_graph(std::size_t n, std::size_t m, Seed seed,
                                  bool connected = true, double lo = 0.5, double hi = 2.0) {
  Rng rng(seed);
  std::vector<GraphEdge> edges;
  for (std::size_t i = 0; i < m; ++i) {
    Vertex u, v;
    if (connected && i + 1 < n) {
      u = i + 1;
      v = rng.below(i + 1);
    } else {
      const auto p = random_subset(rng, n, 2);
      u = p[0];
      v = p[1];
    }
    edges.push_back({u, v, rng.uniform(lo, hi)});
  }
  return WeightedGraph(n, std::move(edges));
}

inline Eigen::MatrixXd dense_laplacian(const WeightedGraph& g) {
  const auto n = static_cast<Eigen::Index>(g.num_vertices());
  Eigen::MatrixXd l = Eigen::MatrixXd::Zero(n, n);
  for (const auto& e : g.edges()) {
    const auto u = static_cast<Eigen::Index>(e.u), v = static_cast<Eigen::Index>(e.v);
    l(u, u) += e.weight;
    l(v, v) += e.weight;
    l(u, v) -= e.weight;
    l(v, u) -= e.weight;
  }
  return l;
}

/// Pseudo-inverse of a connected Laplacian as (L + J/n)^{-1} - J/n, by LU.
inline Eigen::MatrixXd lu_pseudo_inverse(const WeightedGraph& g) {
  const auto n = static_cast<Eigen::Index>(g.num_vertices());
  const Eigen::MatrixXd j = Eigen::MatrixXd::Constant(n, n, 1.0 / static_cast<double>(n));
  return (dense_laplacian(g) + j).fullPivLu().inverse() - j;
}

inline double lu_resistance(const Eigen::MatrixXd& pinv, Vertex a, Vertex b) {
  const auto i = static_cast<Eigen::Index>(a), k = static_cast<Eigen::Index>(b);
  return pinv(i, i) + pinv(k, k) - 2.0 * pinv(i, k);
}

/// Minimum weight of a hyperedge set separating s from t, over all 2^n sides.
inline double brute_st_cut(const Hypergraph& h, Vertex s, Vertex t) {
  const std::size_t n = h.num_vertices();
  double best = std::numeric_limits<double>::infinity();
  for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << n); ++mask) {
    if (!((mask >> s) & 1U) || ((mask >> t) & 1U)) continue;
    std::vector<bool> side(n);
    for (std::size_t v = 0; v < n; ++v) side[v] = (mask >> v) & 1U;
    best = std::min(best, cut_value(h, side));
  }
  return best;
}

inline double brute_global_cut(const Hypergraph& h) {
  const std::size_t n = h.num_vertices();
  double best = std::numeric_limits<double>::infinity();
  for (std::uint32_t mask = 1; mask + 1 < (std::uint32_t{1} << n); ++mask) {
    std::vector<bool> side(n);
    for (std::size_t v = 0; v < n; ++v) side[v] = (mask >> v) & 1U;
    best = std::min(best, cut_value(h, side));
  }
  return best;
}

/// Brute-force min cut of a flow network over node bipartitions.
inline double brute_network_cut(const FlowNetwork& net) {
  double best = std::numeric_limits<double>::infinity();
  for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << net.nodes); ++mask) {
    if (!((mask >> net.source) & 1U) || ((mask >> net.sink) & 1U)) continue;
    double c = 0.0;
    for (const auto& a : net.arcs)
      if (((mask >> a.from) & 1U) && !((mask >> a.to) & 1U)) c += a.capacity;
    best = std::min(best, c);
  }
  return best;
}

}  // namespace hgtest
