#include "rosenau/tableau.hpp"

#include <cmath>

#include <doctest.h>

#include "rosenau/errors.hpp"

using namespace rosenau;

TEST_SUITE_BEGIN("tableau");

namespace {

// Published 2- and 3-stage Gauss coefficients in closed form.
ButcherTableau reference_gauss2() {
  const double r3 = std::sqrt(3.0);
  ButcherTableau t;
  t.s = 2;
  t.order = 4;
  t.c = {0.5 - r3 / 6, 0.5 + r3 / 6};
  t.a = {0.25, 0.25 - r3 / 6, 0.25 + r3 / 6, 0.25};
  t.b = {0.5, 0.5};
  return t;
}

ButcherTableau reference_gauss3() {
  const double r15 = std::sqrt(15.0);
  ButcherTableau t;
  t.s = 3;
  t.order = 6;
  t.c = {0.5 - r15 / 10, 0.5, 0.5 + r15 / 10};
  t.a = {5.0 / 36,            2.0 / 9 - r15 / 15, 5.0 / 36 - r15 / 30,
         5.0 / 36 + r15 / 24, 2.0 / 9,            5.0 / 36 - r15 / 24,
         5.0 / 36 + r15 / 30, 2.0 / 9 + r15 / 15, 5.0 / 36};
  t.b = {5.0 / 18, 4.0 / 9, 5.0 / 18};
  return t;
}

void check_matches(const ButcherTableau& got, const ButcherTableau& want,
                   double tol) {
  REQUIRE(got.s == want.s);
  CHECK(got.order == want.order);
  for (int i = 0; i < want.s; ++i) {
    CHECK(std::abs(got.c[i] - want.c[i]) < tol);
    CHECK(std::abs(got.b[i] - want.b[i]) < tol);
    for (int j = 0; j < want.s; ++j) {
      CHECK(std::abs(got.aij(i, j) - want.aij(i, j)) < tol);
    }
  }
}

}  // namespace

TEST_CASE("s = 1 is the implicit midpoint rule") {
  const ButcherTableau t = gauss_legendre(1);
  CHECK(t.c[0] == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(t.aij(0, 0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(t.b[0] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(t.order == 2);
}

TEST_CASE("s = 2 and s = 3 reproduce the published coefficients") {
  check_matches(gauss_legendre(2), reference_gauss2(), 1e-14);
  check_matches(gauss_legendre(3), reference_gauss3(), 1e-14);
}

TEST_CASE("structural invariants for every supported stage count") {
  for (int s = 1; s <= kMaxGaussStages; ++s) {
    const ButcherTableau t = gauss_legendre(s);
    CHECK(t.order == 2 * s);

    // abscissae strictly increasing inside (0, 1)
    CHECK(t.c.front() > 0.0);
    CHECK(t.c.back() < 1.0);
    for (int i = 1; i < s; ++i) CHECK(t.c[i] > t.c[i - 1]);

    // row sums equal the abscissae
    for (int i = 0; i < s; ++i) {
      double sum = 0.0;
      for (int j = 0; j < s; ++j) sum += t.aij(i, j);
      CHECK(std::abs(sum - t.c[i]) < 1e-13);
    }

    // weights sum to one
    double bsum = 0.0;
    for (double b : t.b) bsum += b;
    CHECK(std::abs(bsum - 1.0) < 1e-13);

    // quadrature exactness: sum b_i c_i^k = 1/(k+1), k = 0..2s-1
    for (int k = 0; k <= 2 * s - 1; ++k) {
      double q = 0.0;
      for (int i = 0; i < s; ++i) q += t.b[i] * std::pow(t.c[i], k);
      CHECK(std::abs(q - 1.0 / (k + 1)) < 1e-12);
    }
  }
}

TEST_CASE("symplectic defect") {
  for (int s = 1; s <= kMaxGaussStages; ++s) {
    CHECK(symplectic_defect(gauss_legendre(s)) < 1e-13);
  }
  CHECK(symplectic_defect(gauss_legendre(2)) < 1e-14);
  CHECK(symplectic_defect(gauss_legendre(3)) < 1e-14);

  // explicit Euler: |b1 a11 + b1 a11 - b1 b1| = 1
  ButcherTableau euler;
  euler.s = 1;
  euler.order = 1;
  euler.c = {0.0};
  euler.a = {0.0};
  euler.b = {1.0};
  CHECK(symplectic_defect(euler) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("stage count limits") {
  CHECK_THROWS_AS(gauss_legendre(0), UnsupportedError);
  CHECK_THROWS_AS(gauss_legendre(-2), UnsupportedError);
  CHECK_THROWS_AS(gauss_legendre(kMaxGaussStages + 1), UnsupportedError);
}

TEST_SUITE_END();
