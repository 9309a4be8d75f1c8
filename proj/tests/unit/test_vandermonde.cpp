#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "dmm/vandermonde.hpp"
#include "oracles.hpp"

using dmm::Complex;
using dmm::ConfluentSpec;

namespace {

bool same(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (std::abs(a[i] - b[i]) > 1e-12) return false;
  return true;
}

}  // namespace

TEST_CASE("column v_i") {
  const Complex b(0.7, -1.3);
  CHECK(same(dmm::column_v_i(b, 0, 3), {1.0, b, b * b}));
  CHECK(same(dmm::column_v_i(b, 1, 4), {0.0, 1.0, 2.0 * b, 3.0 * b * b}));
  CHECK(same(dmm::column_v_i(Complex(0.0), 2, 4), {0.0, 0.0, 1.0, 0.0}));
}

TEST_CASE("spec validation") {
  CHECK_THROWS_AS(ConfluentSpec({1.0, 2.0}, {1}), dmm::InputError);
  CHECK_THROWS_AS(ConfluentSpec({1.0, 1.0}, {1, 1}), dmm::InputError);
  CHECK_THROWS_AS(ConfluentSpec({1.0}, {0}), dmm::InputError);
  CHECK_THROWS_AS(ConfluentSpec({}, {}), dmm::InputError);
  ConfluentSpec s({1.0, 2.0, 3.0}, {2, 1, 3});
  CHECK(s.order() == 6);
  CHECK(s.block_offset(2) == 3);
}

TEST_CASE("build confluent") {
  const Complex a(1.5, 0.0), b(-0.5, 2.0);
  const auto m = dmm::build_confluent<Complex>(ConfluentSpec({a, b}, {2, 3}));
  REQUIRE(m.rows() == 5);
  const auto ref = oracle::confluent({a, b}, {2, 3});
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = 0; j < 5; ++j) CHECK(std::abs(m(i, j) - Complex(ref[i][j])) < 1e-12);
  // second column of the first block is v_1(a) = (0, 1, 2a, 3a^2, 4a^3)
  CHECK(std::abs(m(4, 1) - 4.0 * a * a * a) < 1e-12);

  const auto one = dmm::build_confluent<Complex>(ConfluentSpec({Complex(3, 1)}, {1}));
  CHECK(one.rows() == 1);
  CHECK(one(0, 0) == Complex(1.0));

  const std::vector<Complex> pts{0.0, 1.0, -2.0};
  const auto plain = dmm::build_confluent<Complex>(ConfluentSpec(pts, {1, 1, 1}));
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) CHECK(std::abs(plain(i, j) - std::pow(pts[j], static_cast<int>(i))) < 1e-12);
}

TEST_CASE("determinant formula examples") {
  const Complex a(0.3, 0.1), b(-1.0, 0.4);
  CHECK(std::abs(dmm::det_product_formula(ConfluentSpec({a, b}, {2, 3})) - std::pow(b - a, 6)) < 1e-12);
  CHECK(std::abs(dmm::det_product_formula(ConfluentSpec({0.0, 1.0, -1.0}, {1, 1, 1})) - 2.0) < 1e-12);
  const ConfluentSpec s({1.0, 2.0}, {2, 2});
  CHECK(std::abs(dmm::det_product_formula(s) - 1.0) < 1e-12);
  CHECK(std::abs(dmm::det_direct(dmm::build_confluent<Complex>(s)) - 1.0) < 1e-10);
  CHECK(dmm::log2_abs_det_product_formula(ConfluentSpec({0.0, 2.0}, {2, 2})) == doctest::Approx(4.0));
}

TEST_CASE("det_direct basics") {
  CHECK(dmm::det_direct(dmm::DenseMatrix<Complex>::identity(3)) == Complex(1.0));
  dmm::DenseMatrix<Complex> u(2, 2);
  u(0, 0) = u(0, 1) = u(1, 1) = 1.0;
  CHECK(dmm::det_direct(u) == Complex(1.0));
  dmm::DenseMatrix<Complex> z(2, 2);
  z(0, 0) = z(1, 0) = 1.0;
  CHECK(dmm::det_direct(z) == Complex(0.0));
  CHECK(dmm::log2_det(z).singular);
}

TEST_CASE("elimination agrees with the product formula and a complete-pivoting oracle") {
  oracle::Gen gen(2024);
  for (int trial = 0; trial < 100; ++trial) {
    const int r = gen.integer(1, 5);
    auto betas = gen.spread_points(r, 3.0, 0.3);
    std::vector<int> mus;
    int n = 0;
    for (int i = 0; i < r; ++i) {
      mus.push_back(gen.integer(1, std::max(1, std::min(4, 10 - n - (r - i - 1)))));
      n += mus.back();
    }
    const ConfluentSpec spec(betas, mus);
    const Complex formula = dmm::det_product_formula(spec);
    const Complex direct = dmm::det_direct(dmm::build_confluent<Complex>(spec));
    const Complex ref(oracle::det(oracle::confluent(betas, mus)));
    CHECK(std::abs(direct - formula) <= 1e-8 * std::abs(formula));
    CHECK(std::abs(ref - formula) <= 1e-8 * std::abs(formula));
    CHECK(std::abs(formula) > 0.0);

    const auto ld = dmm::log2_det(dmm::build_confluent<Complex>(spec));
    CHECK(ld.log2_abs == doctest::Approx(dmm::log2_abs_det_product_formula(spec)).epsilon(1e-9));
  }
}

TEST_CASE("block permutation keeps the determinant magnitude") {
  oracle::Gen gen(77);
  for (int trial = 0; trial < 40; ++trial) {
    auto betas = gen.spread_points(4, 2.0, 0.3);
    std::vector<int> mus{gen.integer(1, 3), gen.integer(1, 3), gen.integer(1, 2), gen.integer(1, 2)};
    const double before = std::abs(dmm::det_direct(dmm::build_confluent<Complex>(ConfluentSpec(betas, mus))));
    std::vector<std::size_t> perm{0, 1, 2, 3};
    std::shuffle(perm.begin(), perm.end(), gen.engine());
    std::vector<Complex> b2;
    std::vector<int> m2;
    for (auto p : perm) b2.push_back(betas[p]), m2.push_back(mus[p]);
    const double after = std::abs(dmm::det_direct(dmm::build_confluent<Complex>(ConfluentSpec(b2, m2))));
    CHECK(after == doctest::Approx(before).epsilon(1e-9));
  }
}

TEST_CASE("derivative identity for the last column of a block") {
  CHECK(dmm::vydiff_residual(ConfluentSpec({0.0, 1.0}, {2, 1}), 0) <= 1e-9);
  CHECK(dmm::vydiff_residual(ConfluentSpec({1.0, 2.0}, {1, 2}), 1) <= 1e-9);
  CHECK_THROWS_AS(dmm::vydiff_residual(ConfluentSpec({1.0, 2.0}, {1, 1}), 0), dmm::InputError);

  oracle::Gen gen(31);
  for (int trial = 0; trial < 30; ++trial) {
    const int r = gen.integer(1, 3);
    auto betas = gen.spread_points(r, 2.0, 0.3);
    std::vector<int> mus;
    for (int i = 0; i < r; ++i) mus.push_back(gen.integer(1, 3));
    mus[0] = std::max(mus[0], 2);
    const ConfluentSpec spec(betas, mus);
    for (std::size_t b = 0; b < spec.blocks(); ++b)
      if (mus[b] > 1) CHECK(dmm::vydiff_residual(spec, b) <= 1e-8);
  }
}
