#include <catch_amalgamated.hpp>

#include "support.hpp"

using namespace hgsparse;
using Catch::Approx;

TEST_CASE("cut verification") {
  const auto h = hgtest::random_hypergraph(10, 30, 4, 1);
  SECTION("identity") {
    const auto v = verify_cut_sparsifier(h, h, 0.0);
    CHECK(v.max_rel_error == 0.0);
    CHECK(v.passed());
    CHECK(v.cuts_checked == (1U << 9) - 1);
  }
  SECTION("doubled weights") {
    const auto v = verify_cut_sparsifier(h, h.scaled(2.0), 0.25);
    CHECK(v.max_rel_error == Approx(1.0));
    CHECK_FALSE(v.passed());
  }
  SECTION("worst cut excludes vertex 0 and is reported") {
    const auto v = verify_cut_sparsifier(h, h.scaled(1.5), 0.1);
    REQUIRE_FALSE(v.worst_cut.empty());
    for (auto x : v.worst_cut) CHECK(x != 0);
  }
  SECTION("size limit") {
    const auto big = hgtest::random_hypergraph(21, 30, 3, 1);
    CHECK_THROWS_AS(verify_cut_sparsifier(big, big, 0.1), TooLargeForExhaustive);
  }
  SECTION("vertex mismatch") {
    const auto other = hgtest::random_hypergraph(9, 30, 3, 1);
    CHECK_THROWS(verify_cut_sparsifier(h, other, 0.1));
  }
  SECTION("zero cut made positive") {
    const Hypergraph a(3, {{{0, 1}, 1.0}});
    const Hypergraph b(3, {{{0, 1}, 1.0}, {{1, 2}, 0.1}});
    const auto v = verify_cut_sparsifier(a, b, 0.5);
    CHECK(v.zero_cut_violations > 0);
    CHECK_FALSE(v.passed());
  }
}

TEST_CASE("cut verification on a sparsifier") {
  const auto h = hgtest::random_hypergraph(12, 150, 5, 3);
  SparsifyConfig cfg;
  cfg.seed = 42;
  const auto rep = sparsify_hypergraph(h, cfg);
  CHECK(verify_cut_sparsifier(h, rep.output, 0.25).passed());
}

TEST_CASE("sampled spectral verification") {
  const auto h = hgtest::random_hypergraph(10, 30, 4, 2);
  SECTION("identity") {
    const auto v = verify_spectral_sampled(h, h, 0.0, 50, 1);
    CHECK(v.max_rel_error == 0.0);
    CHECK(v.sign_vectors == (1U << 9));
    CHECK(v.directions_checked == 50 + (1U << 9));
    CHECK(std::string(SpectralVerification::kind) == "sampled necessary condition");
  }
  SECTION("doubled weights") {
    CHECK(verify_spectral_sampled(h, h.scaled(2.0), 0.25, 20, 1).max_rel_error ==
          Approx(1.0));
  }
  SECTION("constant directions are excluded") {
    SpectralVerification rep;
    accumulate_energy_error(h, h.scaled(3.0), std::vector<double>(10, 1.7), rep);
    CHECK(rep.max_rel_error == 0.0);
    CHECK(rep.zero_energy_violations == 0);
  }
  SECTION("large inputs skip sign vectors") {
    const auto big = hgtest::random_hypergraph(15, 40, 4, 2);
    CHECK(verify_spectral_sampled(big, big, 0.0, 10, 1).sign_vectors == 0);
  }
}

TEST_CASE("indicator directions reproduce cut errors") {
  const auto h = hgtest::random_hypergraph(9, 40, 4, 5);
  SparsifyConfig cfg;
  cfg.eps = 0.5;
  cfg.sample_constant = 0.3;
  cfg.seed = 1;
  const auto sparse = sparsify_hypergraph(h, cfg).output;
  const auto cut = verify_cut_sparsifier(h, sparse, 0.5);
  SpectralVerification rep;
  for (std::uint32_t bits = 1; bits < (1U << 8); ++bits) {
    std::vector<double> x(9, 0.0);
    for (std::size_t v = 1; v < 9; ++v) x[v] = (bits >> (v - 1)) & 1U;
    accumulate_energy_error(h, sparse, x, rep);
  }
  CHECK(rep.max_rel_error == cut.max_rel_error);
}

TEST_CASE("energy comparison") {
  SECTION("rank 2 is an equality") {
    const auto h = hgtest::random_hypergraph(10, 25, 2, 3);
    const auto u = init_underlying(h);
    const auto lap = build_laplacian(flatten(u));
    const Eigen::MatrixXd half = pseudo_inverse_sqrt(lap);
    Rng rng(4);
    for (int t = 0; t < 20; ++t) {
      Eigen::VectorXd x(10);
      for (auto& v : x) v = rng.normal();
      x = lap.project(x);
      const Eigen::VectorXd y = half * x;
      const std::vector<double> yv(y.data(), y.data() + 10);
      CHECK(total_energy(h, yv) == Approx(x.squaredNorm()).epsilon(1e-9));
    }
    CHECK(energy_comparison(h, u, 50, 1).passed());
  }
  SECTION("random hypergraphs") {
    for (Seed s = 0; s < 10; ++s) {
      const auto h = hgtest::random_hypergraph(4 + s, 20, 6, s);
      const auto res = energy_comparison(h, init_underlying(h), 100, s);
      REQUIRE(res.trials == 100);
      REQUIRE(res.passed());
      REQUIRE(res.min_slack >= -1e-8);
    }
  }
  SECTION("kernel directions vanish") {
    const auto h = hgtest::random_hypergraph(6, 10, 3, 1);
    const auto lap = build_laplacian(flatten(init_underlying(h)));
    const Eigen::VectorXd x = lap.project(Eigen::VectorXd::Constant(6, 2.0));
    CHECK(x.norm() < 1e-14);
  }
}

TEST_CASE("Foster check") {
  CHECK(foster_check(hgtest::random_graph(12, 11, 1)));
  CHECK(foster_sum(WeightedGraph(3, {{0, 1, 1.0}, {1, 2, 1.0}, {0, 2, 1.0}})) == Approx(2.0));
  for (Seed s = 0; s < 10; ++s) {
    const auto h = hgtest::random_hypergraph(20, 50, 5, s, s % 2 == 0);
    CHECK(foster_check(init_underlying(h)));
  }
}
