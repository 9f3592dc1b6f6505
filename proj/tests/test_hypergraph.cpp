#include <catch_amalgamated.hpp>

#include <set>

#include "support.hpp"

using namespace hgsparse;
using Catch::Approx;

TEST_CASE("hyperedge energy is the squared spread") {
  const std::vector<Vertex> e{0, 1, 2};
  CHECK(hyperedge_energy(e, std::vector<double>{0, 1, 3}) == 9.0);
  CHECK(hyperedge_energy(e, std::vector<double>{2.5, 2.5, 2.5}) == 0.0);
  const std::vector<Vertex> pair{1, 3};
  CHECK(hyperedge_energy(pair, std::vector<double>{0, 4, 9, -1}) == 25.0);
}

TEST_CASE("total energy") {
  const Hypergraph h(2, {{{0, 1}, 2.0}});
  CHECK(total_energy(h, std::vector<double>{0, 1}) == 2.0);
  CHECK(total_energy(h, std::vector<double>{0, 0}) == 0.0);
}

TEST_CASE("rank-2 energy equals the graph quadratic form") {
  for (Seed s = 0; s < 20; ++s) {
    const auto h = hgtest::random_hypergraph(9, 25, 2, s);
    const auto l = hgtest::dense_laplacian(as_graph(h));
    Rng rng(s + 100);
    Eigen::VectorXd x(9);
    for (auto i = 0; i < 9; ++i) x[i] = rng.normal();
    const std::vector<double> xv(x.data(), x.data() + 9);
    CHECK(total_energy(h, xv) == Approx(x.dot(l * x)).epsilon(1e-12));
  }
}

TEST_CASE("cut value") {
  const Hypergraph h(3, {{{0, 1, 2}, 3.0}});
  CHECK(cut_value(h, std::vector<bool>{false, false, false}) == 0.0);
  CHECK(cut_value(h, std::vector<bool>{true, true, true}) == 0.0);
  CHECK(cut_value(h, std::vector<bool>{true, false, false}) == 3.0);
  const std::vector<Vertex> s{0};
  CHECK(cut_value(h, s) == 3.0);
}

TEST_CASE("cut value equals the energy of the indicator, all subsets") {
  for (Seed s = 0; s < 5; ++s) {
    const std::size_t n = 6 + s;
    const auto h = hgtest::random_hypergraph(n, 20, 5, s, false);
    for (std::uint32_t mask = 0; mask < (1U << n); ++mask) {
      std::vector<bool> side(n);
      std::vector<double> x(n);
      for (std::size_t v = 0; v < n; ++v) {
        side[v] = (mask >> v) & 1U;
        x[v] = side[v] ? 1.0 : 0.0;
      }
      REQUIRE(cut_value(h, side) == total_energy(h, x));
    }
  }
}

TEST_CASE("hypergraph validation") {
  CHECK_THROWS_AS(Hypergraph(3, {{{0}, 1.0}}), std::invalid_argument);
  CHECK_THROWS_AS(Hypergraph(3, {{{0, 0}, 1.0}}), std::invalid_argument);
  CHECK_THROWS_AS(Hypergraph(3, {{{0, 3}, 1.0}}), std::out_of_range);
  CHECK_THROWS_AS(Hypergraph(3, {{{0, 1}, -1.0}}), std::invalid_argument);
  CHECK_NOTHROW(Hypergraph(3, {{{0, 1}, 0.0}}));
  const Hypergraph h(5, {{{0, 1}, 1.0}, {{1, 2, 3, 4}, 2.0}});
  CHECK(h.rank() == 4);
  CHECK(h.total_weight() == 3.0);
}

TEST_CASE("initial star weights") {
  SECTION("w / (|e| - 1) on each star edge") {
    const Hypergraph h(5, {{{1, 2, 3, 4}, 3.0}});
    const auto u = init_underlying(h);
    REQUIRE(u.num_labels() == 3);
    for (std::size_t f = 0; f < 3; ++f) {
      CHECK(u.layout().label(f).anchor == 1);
      CHECK(u.weight(f) == 1.0);
    }
    std::set<Vertex> others;
    for (const auto& lab : u.layout().labels()) others.insert(lab.other);
    CHECK(others == std::set<Vertex>{2, 3, 4});
  }
  SECTION("a pair is its own star") {
    const Hypergraph h(2, {{{0, 1}, 5.0}});
    const auto u = init_underlying(h);
    REQUIRE(u.num_labels() == 1);
    CHECK(u.weight(0) == 5.0);
  }
  SECTION("stars sum to w_e") {
    for (Seed s = 0; s < 10; ++s) {
      const auto h = hgtest::random_hypergraph(12, 40, 6, s);
      for (auto rule : {AnchorRule::min_vertex(), AnchorRule::seeded_random(s)}) {
        const auto u = init_underlying(h, rule);
        for (EdgeId e = 0; e < h.num_edges(); ++e) {
          REQUIRE(u.star_mass(e) == Approx(h.edge(e).weight).epsilon(1e-14));
          const auto a = u.layout().anchor(e);
          const auto& vs = h.edge(e).vertices;
          REQUIRE(std::find(vs.begin(), vs.end(), a) != vs.end());
        }
      }
    }
  }
}

TEST_CASE("flattened underlying graph") {
  SECTION("one hyperedge") {
    const Hypergraph h(3, {{{0, 1, 2}, 2.0}});
    const auto g = flatten(init_underlying(h));
    REQUIRE(g.num_edges() == 2);
    CHECK(g.edges()[0].u == 0);
    CHECK(g.edges()[0].v == 1);
    CHECK(g.edges()[1].u == 0);
    CHECK(g.edges()[1].v == 2);
    CHECK(g.edges()[0].weight == 1.0);
    CHECK(g.edges()[1].weight == 1.0);
  }
  SECTION("shared pairs stay as parallel labels") {
    const Hypergraph h(3, {{{0, 1}, 1.0}, {{0, 1, 2}, 2.0}});
    const auto g = flatten(init_underlying(h));
    REQUIRE(g.num_edges() == 3);
    std::size_t copies = 0;
    for (const auto& e : g.edges()) copies += (e.u == 0 && e.v == 1);
    CHECK(copies == 2);
  }
  SECTION("label count is the sum of |e| - 1") {
    const auto h = hgtest::random_hypergraph(15, 50, 7, 3);
    std::size_t want = 0;
    for (const auto& e : h.edges()) want += e.vertices.size() - 1;
    CHECK(flatten(init_underlying(h)).num_edges() == want);
  }
}
