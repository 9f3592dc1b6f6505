#include <catch_amalgamated.hpp>

#include <numeric>

#include "support.hpp"

using namespace hgsparse;
using Catch::Approx;

namespace {

UnderlyingGraph random_underlying(std::size_t n, std::size_t m, std::size_t r, Seed s,
                                  bool connected = true) {
  return init_underlying(hgtest::random_hypergraph(n, m, r, s, connected));
}

}  // namespace

TEST_CASE("sample counts") {
  CHECK(graph_sample_count(30, 0.3, 9.0) ==
        static_cast<std::size_t>(std::ceil(9.0 * 30 * std::log(30.0) / 0.09)));
  CHECK(graph_sample_count(1, 0.5, 9.0) == graph_sample_count(2, 0.5, 9.0));
}

TEST_CASE("draw allocation is exact and proportional") {
  const auto a = allocate_draws(100, {2.0, 1.0, 0.0, 1.0});
  CHECK(std::accumulate(a.begin(), a.end(), std::size_t{0}) == 100);
  CHECK(a[0] == 50);
  CHECK(a[1] == 25);
  CHECK(a[2] == 0);
  CHECK(a[3] == 25);
  const auto b = allocate_draws(10, {1.0, 1.0, 1.0});
  CHECK(std::accumulate(b.begin(), b.end(), std::size_t{0}) == 10);
  for (auto v : b) CHECK((v == 3 || v == 4));
  CHECK(allocate_draws(5, {0.0, 0.0}) == std::vector<std::size_t>{0, 0});
}

TEST_CASE("graph sparsification is unbiased with exact resistances") {
  const auto u = random_underlying(8, 12, 4, 21);
  GraphSparsifyConfig cfg;
  cfg.exact_resistances = true;
  cfg.oversampling = 0.5;  // few draws, so sampling noise is visible
  const std::size_t runs = 2000;
  const auto labels = u.num_labels();
  std::vector<double> sum(labels, 0.0), sum2(labels, 0.0);
  for (std::size_t i = 0; i < runs; ++i) {
    const auto out = sparsify_graph(u, 0.5, derive_seed(3, "run", i), cfg);
    for (std::size_t f = 0; f < labels; ++f) {
      sum[f] += out.weight(f);
      sum2[f] += out.weight(f) * out.weight(f);
    }
  }
  for (std::size_t f = 0; f < labels; ++f) {
    const double mean = sum[f] / runs;
    const double var = std::max(sum2[f] / runs - mean * mean, 0.0);
    const double se = std::sqrt(var / runs);
    INFO("label " << f << " mean " << mean << " want " << u.weight(f) << " se " << se);
    CHECK(std::abs(mean - u.weight(f)) <= 4.0 * se + 1e-12);
  }
}

TEST_CASE("bridges are sampled uniformly") {
  // Star K_{1,5} with unit weights: every c_f R_f is 1.
  const Hypergraph h(6, {{{0, 1}, 1.0}, {{0, 2}, 1.0}, {{0, 3}, 1.0}, {{0, 4}, 1.0},
                         {{0, 5}, 1.0}});
  const auto u = init_underlying(h);
  GraphSparsifyConfig cfg;
  cfg.exact_resistances = true;
  const auto res = sparsify_graph_detailed(u, 0.5, 1, cfg);
  for (double r : res.resistance) CHECK(r == Approx(1.0));
  // Each draw adds mass / (q R_f) = 5 / q, so counts are weight * q / 5.
  const double q = static_cast<double>(res.draws);
  double total = 0.0;
  for (std::size_t f = 0; f < 5; ++f) {
    const double count = res.graph.weight(f) * q / 5.0;
    CHECK(count == Approx(std::round(count)).margin(1e-9));
    CHECK(count == Approx(q / 5.0).epsilon(0.35));
    total += count;
  }
  CHECK(total == Approx(q));
}

TEST_CASE("output support and components") {
  for (Seed s = 0; s < 10; ++s) {
    const auto u = random_underlying(20, 30, 5, s, s % 2 == 0);
    const auto out = sparsify_graph(u, 0.3, s);
    const auto cin = connected_components(flatten(u));
    const auto cout = connected_components(flatten(out));
    for (std::size_t f = 0; f < u.num_labels(); ++f) {
      REQUIRE(out.weight(f) >= 0.0);
      if (u.weight(f) == 0.0) REQUIRE(out.weight(f) == 0.0);
    }
    REQUIRE(cout.count >= cin.count);
  }
}

TEST_CASE("graph sparsification is deterministic") {
  const auto u = random_underlying(15, 40, 4, 5);
  CHECK(sparsify_graph(u, 0.3, 77).weights() == sparsify_graph(u, 0.3, 77).weights());
  CHECK(sparsify_graph(u, 0.3, 77).weights() != sparsify_graph(u, 0.3, 78).weights());
}

TEST_CASE("all-zero input yields an empty graph") {
  const Hypergraph h(3, {{{0, 1, 2}, 0.0}});
  const auto out = sparsify_graph(init_underlying(h), 0.3, 1);
  for (double w : out.weights()) CHECK(w == 0.0);
}

TEST_CASE("spectral sandwich of the graph sparsifier") {
  const double eps = 0.3;
  std::size_t ok = 0;
  const std::size_t seeds = 20;
  for (Seed s = 0; s < seeds; ++s) {
    const auto u = random_underlying(30, 200, 5, s);
    const auto out = sparsify_graph(u, eps, derive_seed(s, "sandwich"));
    const auto ev = pencil_eigenvalues(build_laplacian(flatten(out)), build_laplacian(flatten(u)));
    ok += ev.minCoeff() >= 1 - 1.2 * eps && ev.maxCoeff() <= 1 + 1.2 * eps;
  }
  CHECK(static_cast<double>(ok) >= 0.95 * seeds);
}

TEST_CASE("invalid accuracy") {
  const auto u = random_underlying(5, 5, 3, 1);
  CHECK_THROWS(sparsify_graph(u, 0.0, 1));
  CHECK_THROWS(sparsify_graph(u, 1.0, 1));
}
