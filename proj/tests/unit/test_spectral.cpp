#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "dmm/spectral.hpp"
#include "oracles.hpp"

using dmm::Edge;
using dmm::PotentialVector;
using dmm::WeightedGraph;

namespace {

dmm::DenseMatrix<double> sym2(double a, double b, double d) {
  dmm::DenseMatrix<double> m(2, 2);
  m(0, 0) = a;
  m(0, 1) = m(1, 0) = b;
  m(1, 1) = d;
  return m;
}

// Closed-form spectrum of a symmetric 2x2 matrix.
std::vector<double> eig2(double a, double b, double d) {
  const double mid = (a + d) / 2, rad = std::hypot((a - d) / 2, b);
  return {mid - rad, mid + rad};
}

}  // namespace

TEST_CASE("graph validation") {
  CHECK_THROWS_AS(WeightedGraph(0, {}), dmm::InputError);
  CHECK_THROWS_AS(WeightedGraph(2, {{0, 0, 1}}), dmm::InputError);
  CHECK_THROWS_AS(WeightedGraph(2, {{0, 2, 1}}), dmm::InputError);
  CHECK_THROWS_AS(WeightedGraph(2, {{0, 1, 0}}), dmm::InputError);
  CHECK_THROWS_AS(WeightedGraph(2, {{0, 1, 1}, {1, 0, 2}}), dmm::InputError);
  const WeightedGraph g(3, {{2, 0, 4}, {1, 2, 1}});
  CHECK(g.edges()[0].u == 0);
  CHECK(g.weight(2, 0) == 4);
  CHECK(g.total_weight() == 5);
  CHECK(g.max_weight() == 4);
  CHECK(g.incident_weight(2) == 5);
  CHECK(g.degree(1) == 1);
}

TEST_CASE("jacobi examples") {
  auto e = dmm::jacobi_eigenvalues(sym2(0, 1, 0));
  CHECK(e[0] == doctest::Approx(-1));
  CHECK(e[1] == doctest::Approx(1));
  CHECK(dmm::jacobi_eigenvalues(sym2(3, 0, 5)) == std::vector<double>{3, 5});
  e = dmm::jacobi_eigenvalues(sym2(0, 2, 0));
  CHECK(e[0] == doctest::Approx(-2));
  CHECK(e[1] == doctest::Approx(2));

  dmm::DenseMatrix<double> bad(2, 2);
  bad(0, 1) = 1;
  CHECK_THROWS_AS(dmm::jacobi_eigenvalues(bad), dmm::InputError);
}

TEST_CASE("jacobi against closed forms and trace identities") {
  oracle::Gen gen(61);
  for (int trial = 0; trial < 50; ++trial) {
    const double a = gen.real(-5, 5), b = gen.real(-5, 5), d = gen.real(-5, 5);
    const auto got = dmm::jacobi_eigenvalues(sym2(a, b, d));
    const auto want = eig2(a, b, d);
    CHECK(got[0] == doctest::Approx(want[0]).epsilon(1e-10));
    CHECK(got[1] == doctest::Approx(want[1]).epsilon(1e-10));
  }
  for (int trial = 0; trial < 100; ++trial) {
    const int n = gen.integer(1, 10);
    dmm::DenseMatrix<double> m(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
    double trace = 0, frob = 0;
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = i; j < m.cols(); ++j) {
        m(i, j) = m(j, i) = gen.integer(-6, 6);
        frob += (i == j ? 1 : 2) * m(i, j) * m(i, j);
        if (i == j) trace += m(i, i);
      }
    const auto e = dmm::jacobi_eigenvalues(m);
    double s = 0, s2 = 0;
    for (double x : e) s += x, s2 += x * x;
    CHECK(std::abs(s - trace) <= 1e-10 * std::max(1.0, frob));
    CHECK(std::abs(s2 - frob) <= 1e-10 * std::max(1.0, frob));
    CHECK(std::is_sorted(e.begin(), e.end()));
  }
}

TEST_CASE("nuclear norm examples") {
  CHECK(dmm::nuclear_norm(WeightedGraph(2, {{0, 1, 2}})) == doctest::Approx(4));
  CHECK(dmm::nuclear_norm(WeightedGraph(3, {})) == 0.0);
  CHECK(dmm::nuclear_norm(WeightedGraph(3, {{0, 1, 1}, {1, 2, 1}, {0, 2, 1}})) == doctest::Approx(4));
}

TEST_CASE("potential strategies examples") {
  CHECK(dmm::potentials_nuclear(WeightedGraph(2, {{0, 1, 2}})) == PotentialVector({2, 2}));
  CHECK(dmm::potentials_nuclear(WeightedGraph(2, {{0, 1, 1}})) == PotentialVector({2, 2}));
  CHECK(dmm::potentials_nuclear(WeightedGraph(3, {{0, 1, 1}, {1, 2, 1}, {0, 2, 1}})) == PotentialVector({2, 2, 2}));
  CHECK(dmm::potentials_nuclear(WeightedGraph(3, {})) == PotentialVector::ones(3));

  CHECK(dmm::potentials_uniform_wmax(WeightedGraph(2, {{0, 1, 4}})) == PotentialVector({2, 2}));
  CHECK(dmm::potentials_uniform_wmax(WeightedGraph(2, {{0, 1, 5}})) == PotentialVector({3, 3}));
  CHECK(dmm::potentials_uniform_wmax(WeightedGraph(2, {{0, 1, 1}})) == PotentialVector({1, 1}));

  CHECK(dmm::potentials_exhaustive(WeightedGraph(2, {{0, 1, 1}}), 2) == PotentialVector({1, 1}));
  CHECK(dmm::potentials_exhaustive(WeightedGraph(2, {{0, 1, 4}}), 3) == PotentialVector({2, 2}));
  CHECK(dmm::potentials_exhaustive(WeightedGraph(2, {})) == PotentialVector::ones(2));
  CHECK_THROWS_AS(dmm::potentials_exhaustive(WeightedGraph(9, {{0, 1, 1}})), dmm::InputError);
  CHECK_THROWS_AS(dmm::potentials_exhaustive(WeightedGraph(2, {{0, 1, 5}}), 2), dmm::InputError);
}

TEST_CASE("error terms examples") {
  auto t = dmm::potential_error_terms(WeightedGraph(2, {{0, 1, 1}}), PotentialVector({1, 1}));
  CHECK(t.inf_norm == 1);
  CHECK(t.sum_choose2 == 0);
  t = dmm::potential_error_terms(WeightedGraph(2, {{0, 1, 2}}), PotentialVector({2, 2}));
  CHECK(t.inf_norm == 6);
  CHECK(t.sum_choose2 == 2);
  t = dmm::potential_error_terms(WeightedGraph(4, {}), PotentialVector::ones(4));
  CHECK(t.inf_norm == 4);
  CHECK(t.sum_choose2 == 0);
}

TEST_CASE("feasibility reporting") {
  const WeightedGraph g(3, {{0, 1, 1}, {1, 2, 5}});
  const auto bad = dmm::first_violation(g, PotentialVector({1, 2, 2}));
  REQUIRE(bad);
  CHECK(bad->u == 1);
  CHECK(bad->v == 2);
  CHECK_THROWS_AS(dmm::require_feasible(g, PotentialVector({1, 2, 2})), dmm::InfeasibleError);
  CHECK_THROWS_AS(dmm::require_feasible(g, PotentialVector({1, 2})), dmm::InputError);
  CHECK_NOTHROW(dmm::require_feasible(g, PotentialVector({1, 3, 2})));
}

TEST_CASE("strategy properties on random graphs") {
  oracle::Gen gen(62);
  int nonempty = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const int r = gen.integer(1, 6);
    const auto g = gen.graph(r, 9, gen.real(0.1, 1.0));
    const auto uniform = dmm::potentials_uniform_wmax(g);
    const auto nuclear = dmm::potentials_nuclear(g);
    CHECK_FALSE(dmm::first_violation(g, uniform));
    CHECK_FALSE(dmm::first_violation(g, nuclear));
    if (g.empty()) continue;
    ++nonempty;
    const double star = dmm::nuclear_norm(g);
    CHECK(star >= g.max_weight() - 1e-9);
    const auto t = dmm::potential_error_terms(g, nuclear);
    CHECK(static_cast<double>(t.sum_choose2) <= 1.5 * r * star);
    if (r <= 5) {
      const auto best = dmm::potentials_exhaustive(g);
      CHECK_FALSE(dmm::first_violation(g, best));
      const auto obj = dmm::potential_error_terms(g, best).inf_norm;
      CHECK(obj <= dmm::potential_error_terms(g, uniform).inf_norm);
      CHECK(obj <= t.inf_norm);
    }
  }
  CHECK(nonempty > 200);
}

TEST_CASE("the 2r nuclear-norm bound on the infinity norm can fail") {
  // Path with weights 1 and 2 plus an isolated vertex: ||A||_* = 2 sqrt 5,
  // mu = 3 everywhere, rows of mu mu^t - A_w sum to 36 > 8 * 2 sqrt 5.
  const WeightedGraph g(4, {{0, 1, 1}, {1, 2, 2}});
  const double star = dmm::nuclear_norm(g);
  CHECK(star == doctest::Approx(2.0 * std::sqrt(5.0)));
  const auto mu = dmm::potentials_nuclear(g);
  CHECK(mu == PotentialVector::uniform(4, 3));
  const auto t = dmm::potential_error_terms(g, mu);
  CHECK(t.inf_norm == 36);
  CHECK(static_cast<double>(t.inf_norm) > 2.0 * 4 * star);
}
