#include <doctest.h>

#include <cmath>

#include "dmm/reduction.hpp"
#include "oracles.hpp"

using dmm::Complex;
using dmm::PotentialVector;
using dmm::RootMultiset;
using dmm::WeightedGraph;

TEST_CASE("orientation by modulus") {
  const auto rm = RootMultiset::simple({0.0, 1.0});
  auto o = dmm::orient(rm, WeightedGraph(2, {{0, 1, 1}}));
  REQUIRE(o.in_edges[1].size() == 1);
  CHECK(o.in_edges[1][0].source == 0);
  CHECK(o.order == std::vector<int>{1, 0});

  // equal modulus: the real part breaks the tie, -1 points to 1
  o = dmm::orient(RootMultiset::simple({1.0, -1.0}), WeightedGraph(2, {{0, 1, 2}}));
  CHECK(o.in_edges[0].size() == 1);
  CHECK(o.in_edges[0][0].source == 1);
  CHECK(o.in_weight(0) == 2);

  // star into the largest root
  o = dmm::orient(RootMultiset::simple({0.0, 1.0, -1.0, 2.0}),
                  WeightedGraph(4, {{0, 3, 1}, {1, 3, 1}, {2, 3, 1}}));
  CHECK(o.in_degree(3) == 3);
  CHECK(o.order.front() == 3);
}

TEST_CASE("orientation is acyclic and consistent with processing order") {
  oracle::Gen gen(55);
  for (int trial = 0; trial < 50; ++trial) {
    const int r = gen.integer(2, 7);
    const auto rm = RootMultiset::simple(gen.gaussian_integers(r, 2));
    const auto g = gen.graph(r, 3, 0.6);
    const auto o = dmm::orient(rm, g);
    std::vector<int> position(static_cast<std::size_t>(r));
    for (int k = 0; k < r; ++k) position[static_cast<std::size_t>(o.order[static_cast<std::size_t>(k)])] = k;
    std::size_t edge_count = 0;
    for (int v = 0; v < r; ++v)
      for (const auto& e : o.in_edges[static_cast<std::size_t>(v)]) {
        ++edge_count;
        CHECK(std::abs(rm.root(static_cast<std::size_t>(e.source))) <= std::abs(rm.root(static_cast<std::size_t>(v))));
        // sinks come first, every source after all its sinks
        CHECK(position[static_cast<std::size_t>(v)] < position[static_cast<std::size_t>(e.source)]);
      }
    CHECK(edge_count == g.edges().size());
  }
}

TEST_CASE("column assignment examples") {
  std::vector<dmm::InWeight> in{{3, 2}};
  auto a = dmm::assign_columns(in, 2);
  CHECK(a.sets[0].empty());
  CHECK(a.sets[1] == std::vector<int>{0});
  CHECK(a.residues[0] == 1);
  CHECK(a.m == std::vector<int>{2, 2});
  CHECK(a.m_sum() == 4);

  in = {{1, 1}};
  a = dmm::assign_columns(in, 1);
  CHECK(a.sets[0] == std::vector<int>{0});
  CHECK(a.residues[0] == 1);
  CHECK(a.m == std::vector<int>{1});

  in = {{4, 2}};
  a = dmm::assign_columns(in, 2);
  CHECK(a.sets[1] == std::vector<int>{0});
  CHECK(a.residues[0] == 2);

  in = {{5, 2}};
  CHECK_THROWS_AS(dmm::assign_columns(in, 2), dmm::InfeasibleError);
}

TEST_CASE("column sums satisfy the block identity exactly") {
  oracle::Gen gen(56);
  for (int trial = 0; trial < 500; ++trial) {
    const int mu_alpha = gen.integer(1, 5);
    std::vector<dmm::InWeight> in;
    std::int64_t total = 0;
    for (int k = gen.integer(0, 5); k > 0; --k) {
      const int mu = gen.integer(1, 5);
      const int w = gen.integer(1, mu * mu_alpha);
      in.push_back({w, mu});
      total += w;
    }
    const auto a = dmm::assign_columns(in, mu_alpha);
    CHECK(a.m_sum() == mu_alpha * (mu_alpha - 1) / 2 + total);
    // each in-edge's derivative orders over its columns add up to w - 1 per column used
    std::vector<int> exponent(in.size(), 0);
    for (int j = 1; j <= mu_alpha; ++j)
      for (const auto& s : a.column_sources(j, in)) exponent[static_cast<std::size_t>(s.position)] += s.order + 1;
    for (std::size_t l = 0; l < in.size(); ++l) CHECK(exponent[l] == in[l].weight);
  }
}

TEST_CASE("two unit roots, unit weight") {
  const auto rm = RootMultiset::simple({0.0, 1.0});
  const WeightedGraph g(2, {{0, 1, 1}});
  const auto res = dmm::run_reduction(rm, g, PotentialVector::ones(2));
  CHECK(res.log2_factor == doctest::Approx(0.0));
  CHECK(res.log2_det_reduced == doctest::Approx(0.0));
  CHECK(res.residual <= 1e-9);
  // reduced column of the root 1 is (f_m[1, 0]) = (0, 1)
  CHECK(std::abs(res.reduced(0, 1)) < 1e-14);
  CHECK(std::abs(res.reduced(1, 1) - 1.0) < 1e-14);
}

TEST_CASE("weight three on a pair with potentials two") {
  const auto rm = RootMultiset::simple({0.0, 2.0});
  const WeightedGraph g(2, {{0, 1, 3}});
  const PotentialVector mu({2, 2});
  const auto res = dmm::run_reduction(rm, g, mu, {dmm::Precision::Wide, true});
  CHECK(res.log2_det_formula == doctest::Approx(4.0));
  CHECK(res.log2_det_initial == doctest::Approx(4.0));
  CHECK(res.log2_factor == doctest::Approx(3.0));
  CHECK(res.log2_det_reduced == doctest::Approx(1.0));
  CHECK(res.residual <= 1e-9);
  CHECK(res.max_step_residual <= 1e-9);

  const auto check = dmm::hadamard_chain_check(res, rm, g, mu);
  CHECK(check.passed);
  bool saw_sink = false;
  for (const auto& v : check.vertices) {
    CHECK(v.holds);
    if (v.vertex == 1) {
      saw_sink = true;
      CHECK(v.m_sum == 4);
    }
  }
  CHECK(saw_sink);
}

TEST_CASE("empty graph leaves the matrix alone") {
  const auto rm = RootMultiset::simple({0.5, Complex(1, 1), -2.0});
  const WeightedGraph g(3, {});
  const auto res = dmm::run_reduction(rm, g, PotentialVector({2, 1, 2}));
  CHECK(res.log2_factor == 0.0);
  CHECK(res.residual <= 1e-9);
  const auto v0 = dmm::build_confluent<Complex>(dmm::ConfluentSpec({0.5, Complex(1, 1), -2.0}, {2, 1, 2}));
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = 0; j < 5; ++j) CHECK(std::abs(res.reduced(i, j) - v0(i, j)) < 1e-12);
}

TEST_CASE("infeasible potentials are rejected") {
  const auto rm = RootMultiset::simple({0.0, 2.0});
  CHECK_THROWS_AS(dmm::run_reduction(rm, WeightedGraph(2, {{0, 1, 5}}), PotentialVector({1, 2})),
                  dmm::InfeasibleError);
}

TEST_CASE("reduced determinant against an independent determinant") {
  oracle::Gen gen(57);
  for (int trial = 0; trial < 40; ++trial) {
    const int r = gen.integer(2, 4);
    const auto roots = gen.spread_points(r, 4.0, 0.3);
    const auto rm = RootMultiset::simple(roots);
    std::vector<dmm::Edge> path;
    for (int i = 0; i + 1 < r; ++i) path.push_back({i, i + 1, gen.integer(1, 4)});
    const WeightedGraph g(r, path);
    const auto mu = dmm::potentials_uniform_wmax(g);
    for (auto precision : {dmm::Precision::Double, dmm::Precision::Wide}) {
      const auto res = dmm::run_reduction(rm, g, mu, {precision, false});
      CHECK(res.residual <= 1e-7);
      // independent: log2 |det V0| by complete pivoting, product of edge distances directly
      std::vector<int> mus(mu.values().begin(), mu.values().end());
      const double ref_det = std::log2(static_cast<double>(std::abs(oracle::det(oracle::confluent(roots, mus)))));
      double ref_factor = 0.0;
      for (const auto& e : path)
        ref_factor += e.weight * std::log2(std::abs(roots[static_cast<std::size_t>(e.u)] - roots[static_cast<std::size_t>(e.v)]));
      CHECK(res.log2_factor == doctest::Approx(ref_factor).epsilon(1e-12));
      CHECK(res.log2_det_initial == doctest::Approx(ref_det).epsilon(1e-8));
    }
  }
}

TEST_CASE("norm chain on random feasible instances") {
  oracle::Gen gen(58);
  for (int trial = 0; trial < 60; ++trial) {
    const int r = gen.integer(2, 5);
    const auto rm = RootMultiset::simple(gen.gaussian_integers(r, 4));
    const auto g = gen.graph(r, 6, 0.7);
    for (const auto& mu : {dmm::potentials_uniform_wmax(g), dmm::potentials_nuclear(g)}) {
      const auto res = dmm::run_reduction(rm, g, mu, {dmm::Precision::Wide, true});
      CHECK(res.residual <= 1e-6);
      CHECK(res.max_step_residual <= 1e-6);
      const auto check = dmm::hadamard_chain_check(res, rm, g, mu);
      CHECK(check.passed);
      CHECK(check.min_column_margin >= -1e-9);
      CHECK(check.hadamard_margin >= -1e-9);
      CHECK(check.vertex_bound_margin >= -1e-9);
      CHECK(check.mahler_bound_margin >= -1e-9);
      for (const auto& v : check.vertices) CHECK(v.m_sum == v.expected);
    }
  }
}

TEST_CASE("column norm bound") {
  CHECK(dmm::column_norm_bound(1.0, 0, 4) == doctest::Approx(2.0));
  CHECK(dmm::column_norm_bound(0.5, 1, 4) == doctest::Approx(4.0 / std::sqrt(3.0) * 2.0));
  CHECK(dmm::column_norm_bound(2.0, 1, 3) == doctest::Approx(6.0));
  CHECK_THROWS_AS(dmm::column_norm_bound(2.0, 3, 3), dmm::InputError);
  CHECK_THROWS_AS(dmm::column_norm_bound(2.0, -1, 3), dmm::InputError);
}

TEST_CASE("binomial square sums") {
  CHECK(dmm::binom_sq_sum(4, 1) == 14);
  CHECK(dmm::binom_sq_sum(2, 0) == 2);
  CHECK(dmm::binom_sq_sum(5, 4) == 1);
  CHECK(14.0 <= 16.0 / 3.0 * 4.0);
  for (int n = 1; n <= 30; ++n)
    for (int m = 0; m < n; ++m) {
      boost::multiprecision::cpp_int brute = 0;
      for (int k = m; k < n; ++k) brute += boost::multiprecision::cpp_int(oracle::choose(k, m)) * oracle::choose(k, m);
      CHECK(dmm::binom_sq_sum(n, m) == brute);
      CHECK(dmm::binom_sq_sum_within_bound(n, m));
    }
}

TEST_CASE("unit weights and unit potentials reproduce the unweighted chain") {
  oracle::Gen gen(59);
  for (int trial = 0; trial < 30; ++trial) {
    const int r = gen.integer(2, 6);
    const auto roots = gen.gaussian_integers(r, 3);
    const auto rm = RootMultiset::simple(roots);
    const auto g = gen.graph(r, 1, 0.6);
    const auto res = dmm::run_reduction(rm, g, PotentialVector::ones(r));
    double product = 0.0;
    for (const auto& e : g.edges())
      product += std::log2(std::abs(roots[static_cast<std::size_t>(e.u)] - roots[static_cast<std::size_t>(e.v)]));
    CHECK(res.log2_factor == doctest::Approx(product));
    CHECK(res.log2_det_formula == doctest::Approx(oracle::log2_abs_vandermonde(roots)));
    CHECK(dmm::hadamard_chain_check(res, rm, g, PotentialVector::ones(r)).passed);
  }
}
