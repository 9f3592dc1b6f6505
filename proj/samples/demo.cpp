// Builds a random hypergraph, sparsifies it and reports cut fidelity.
#include <cstdio>

#include "hgsparse/hgsparse.hpp"

int main() {
  using namespace hgsparse;
  const std::size_t n = 12, m = 150, r = 5;
  Rng rng(7);
  std::vector<Hyperedge> edges;
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t k = 2 + rng.below(r - 1);
    std::vector<Vertex> perm(n);
    for (std::size_t v = 0; v < n; ++v) perm[v] = v;
    for (std::size_t j = 0; j < k; ++j) std::swap(perm[j], perm[j + rng.below(n - j)]);
    edges.push_back({std::vector<Vertex>(perm.begin(), perm.begin() + k), rng.uniform(0.5, 2.0)});
  }
  const Hypergraph h(n, std::move(edges));

  SparsifyConfig cfg;
  cfg.eps = 0.25;
  cfg.seed = 42;
  const auto rep = sparsify_hypergraph(h, cfg);
  const auto cut = verify_cut_sparsifier(h, rep.output, cfg.eps);
  std::printf("hyperedges kept: %zu of %zu (samples %zu)\n", rep.distinct_edges, h.num_edges(),
              rep.samples);
  std::printf("overestimate mass: %.3f (bound %.3f)\n", rep.z_l1, rep.overestimate.nu_bound);
  std::printf("worst relative cut error over %zu cuts: %.4f\n", cut.cuts_checked,
              cut.max_rel_error);
  return cut.passed() ? 0 : 1;
}
