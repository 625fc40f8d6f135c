#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qnr/ellipse.hpp"
#include "qnr/radius.hpp"
#include "qnr/rng.hpp"

using namespace qnr;

TEST_CASE("symmetric 2x2 with constant diagonal: radius q/10 + 1/24") {
  const ComplexMatrix a =
      ComplexMatrix::from_entries(2, {0.1, 1.0 / 24.0, 1.0 / 24.0, 0.1});
  for (int i = 0; i <= 10; ++i) {
    const double q = 0.1 * i;
    const Exact2x2Result r = exact_2x2(a, QParameter::from_real(q));
    CHECK(r.radius == doctest::Approx(q / 10.0 + 1.0 / 24.0).epsilon(1e-12));
    CHECK(r.ellipse.a == doctest::Approx(1.0 / 24.0).epsilon(1e-12));
    CHECK(r.ellipse.b == doctest::Approx(1.0 / 24.0).epsilon(1e-12));
    CHECK(r.ellipse.d == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(std::abs(r.ellipse.gamma - cplx(0.1, 0)) < 1e-12);
  }
}

TEST_CASE("nilpotent shift: disk of radius (1 + p)/2") {
  const ComplexMatrix shift = ComplexMatrix::from_entries(2, {0, 1, 0, 0});
  for (double q : {0.0, 0.3, 0.6, 1.0}) {
    const Exact2x2Result r = exact_2x2(shift, QParameter::from_real(q));
    const double p = std::sqrt(1.0 - q * q);
    CHECK(r.radius == doctest::Approx((1.0 + p) / 2.0).epsilon(1e-12));
    CHECK(r.ellipse.c == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(r.ellipse.d == doctest::Approx(0.5).epsilon(1e-14));
  }
}

TEST_CASE("all-ones matrix: radius 1 + q") {
  const ComplexMatrix ones = ComplexMatrix::from_entries(2, {1, 1, 1, 1});
  for (double q : {0.2, 0.5, 1.0}) {
    CHECK(exact_2x2(ones, QParameter::from_real(q)).radius ==
          doctest::Approx(1.0 + q).epsilon(1e-12));
  }
}

TEST_CASE("canonical form invariants on random matrices") {
  auto rng = make_rng(71);
  for (int trial = 0; trial < 200; ++trial) {
    const ComplexMatrix a = random_gaussian_matrix(2, rng);
    const Exact2x2Result r = exact_2x2(a, QParameter::from_real(0.45));
    CHECK(r.ellipse.b >= 0.0);
    CHECK(r.ellipse.a >= r.ellipse.b);
    CHECK(r.ellipse.c >= r.ellipse.d);
    CHECK(r.ellipse.d >= 0.0);
    CHECK(std::abs(r.ellipse.c * r.ellipse.c - r.ellipse.d * r.ellipse.d -
                   r.ellipse.a * r.ellipse.b) < 1e-12 * (1.0 + r.ellipse.a * r.ellipse.a));
    // The radius can never fall below the center offset |gamma| q.
    CHECK(r.radius >= std::abs(r.ellipse.gamma) * 0.45 - 1e-12);
  }
}

TEST_CASE("sampling oracle stays below the exact radius") {
  auto rng = make_rng(73);
  for (int trial = 0; trial < 25; ++trial) {
    const ComplexMatrix a = random_unit_norm_matrix(2, rng);
    for (double q : {0.2, 0.7, 1.0}) {
      const QParameter qp = QParameter::from_real(q);
      CHECK(sample_oracle(a, qp, 4000, 100 + trial) <= exact_2x2(a, qp).radius + 1e-9);
    }
  }
}

TEST_CASE("boundary points trace the parametrized ellipse") {
  const ComplexMatrix a =
      ComplexMatrix::from_entries(2, {0.1, 1.0 / 24.0, 1.0 / 24.0, 0.1});
  const QParameter qp = QParameter::from_real(0.5);
  const Exact2x2Result r = exact_2x2(a, qp);
  double max_mod = 0.0;
  for (int k = 0; k < 512; ++k) {
    max_mod = std::max(max_mod,
                       std::abs(ellipse_boundary_point(r.ellipse, 0.5, 2 * M_PI * k / 512)));
  }
  CHECK(max_mod == doctest::Approx(r.radius).epsilon(1e-5));
}

TEST_CASE("rejects non-2x2 input") {
  CHECK_THROWS_AS(exact_2x2(ComplexMatrix::identity(3), QParameter::from_real(0.5)),
                  std::invalid_argument);
}
