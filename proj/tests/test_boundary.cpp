#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "qnr/boundary.hpp"
#include "qnr/ellipse.hpp"
#include "qnr/rng.hpp"

using namespace qnr;

namespace {

AscentConfig quick() {
  AscentConfig cfg;
  cfg.restarts = 16;
  cfg.seed = 5;
  return cfg;
}

// Distance from a point to the parametrized range boundary of a 2x2 matrix:
// dense scan plus local ternary refinement.
double ellipse_distance(const Ellipse2x2& e, double q, cplx z) {
  constexpr int kGrid = 2048;
  double best = 1e300;
  double best_s = 0.0;
  for (int k = 0; k < kGrid; ++k) {
    const double s = 2.0 * M_PI * k / kGrid;
    const double d = std::abs(z - ellipse_boundary_point(e, q, s));
    if (d < best) {
      best = d;
      best_s = s;
    }
  }
  double lo = best_s - 2.0 * M_PI / kGrid, hi = best_s + 2.0 * M_PI / kGrid;
  while (hi - lo > 1e-13) {
    const double s1 = lo + (hi - lo) / 3.0, s2 = hi - (hi - lo) / 3.0;
    if (std::abs(z - ellipse_boundary_point(e, q, s1)) <
        std::abs(z - ellipse_boundary_point(e, q, s2))) {
      hi = s2;
    } else {
      lo = s1;
    }
  }
  return std::abs(z - ellipse_boundary_point(e, q, 0.5 * (lo + hi)));
}

double point_segment_distance(cplx p, cplx a, cplx b) {
  const cplx ab = b - a;
  const double len2 = std::norm(ab);
  if (len2 == 0.0) return std::abs(p - a);
  double t = ((p - a).real() * ab.real() + (p - a).imag() * ab.imag()) / len2;
  t = std::clamp(t, 0.0, 1.0);
  return std::abs(p - (a + t * ab));
}

// Hausdorff distance between the traced polygon and the exact boundary.
double polygon_ellipse_hausdorff(const BoundaryTrace& tr, const Ellipse2x2& e, double q) {
  double worst = 0.0;
  for (const cplx& z : tr.points) worst = std::max(worst, ellipse_distance(e, q, z));
  const size_t m = tr.points.size();
  for (int k = 0; k < 1024; ++k) {
    const cplx z = ellipse_boundary_point(e, q, 2.0 * M_PI * k / 1024);
    double dist = 1e300;
    for (size_t j = 0; j < m; ++j) {
      dist = std::min(dist, point_segment_distance(z, tr.points[j], tr.points[(j + 1) % m]));
    }
    worst = std::max(worst, dist);
  }
  return worst;
}

}  // namespace

TEST_CASE("support function closed cases") {
  const QParameter q06 = QParameter::from_real(0.6);
  const ComplexMatrix id2 = ComplexMatrix::identity(2);
  for (double theta : {0.0, 0.7, 2.0, 4.5}) {
    CHECK(support_function(id2, q06, theta, quick()) ==
          doctest::Approx(0.6 * std::cos(theta)).epsilon(1e-9));
  }

  const ComplexMatrix shift = ComplexMatrix::from_entries(2, {0, 1, 0, 0});
  for (double theta : {0.0, 1.1, 3.9}) {
    CHECK(support_function(shift, q06, theta, quick()) == doctest::Approx(0.9).epsilon(1e-8));
  }

  const ComplexMatrix sym =
      ComplexMatrix::from_entries(2, {0.1, 1.0 / 24.0, 1.0 / 24.0, 0.1});
  CHECK(support_function(sym, QParameter::from_real(0.5), 0.0, quick()) ==
        doctest::Approx(0.05 + 1.0 / 24.0).epsilon(1e-8));
}

TEST_CASE("identity trace collapses to the point q") {
  const BoundaryTrace tr =
      trace_boundary(ComplexMatrix::identity(2), QParameter::from_real(0.5), 360, quick());
  for (const cplx& z : tr.points) CHECK(std::abs(z - cplx(0.5, 0.0)) < 1e-7);
}

TEST_CASE("symmetric 2x2 trace matches the exact ellipse") {
  const ComplexMatrix sym =
      ComplexMatrix::from_entries(2, {0.1, 1.0 / 24.0, 1.0 / 24.0, 0.1});
  const QParameter qp = QParameter::from_real(0.5);
  const Exact2x2Result ex = exact_2x2(sym, qp);
  // Semi-axes of the q = 0.5 range: 1/24 and sqrt(0.75)/24 about 0.05.
  CHECK(ex.ellipse.c + ex.ellipse.p * ex.ellipse.d == doctest::Approx(1.0 / 24.0));
  CHECK(ex.ellipse.d + ex.ellipse.p * ex.ellipse.c ==
        doctest::Approx(std::sqrt(0.75) / 24.0));
  const BoundaryTrace tr = trace_boundary(sym, qp, 720, quick());
  CHECK(polygon_ellipse_hausdorff(tr, ex.ellipse, 0.5) < 1e-5);
}

TEST_CASE("nilpotent shift trace is the circle of radius (1 + p)/2") {
  const QParameter qp = QParameter::from_real(0.6);
  const ComplexMatrix shift = ComplexMatrix::from_entries(2, {0, 1, 0, 0});
  const BoundaryTrace tr = trace_boundary(shift, qp, 720, quick());
  for (const cplx& z : tr.points) CHECK(std::abs(std::abs(z) - 0.9) < 1e-5);
}

TEST_CASE("polygons respect every support half-plane") {
  auto rng = make_rng(83);
  const ComplexMatrix rand3 = random_unit_norm_matrix(3, rng);
  for (const ComplexMatrix& m :
       {ComplexMatrix::from_entries(2, {0, 1, 0, 0}),
        ComplexMatrix::from_entries(2, {0.1, 1.0 / 24.0, 1.0 / 24.0, 0.1}), rand3}) {
    const BoundaryTrace tr = trace_boundary(m, QParameter::from_real(0.7), 180, quick());
    CHECK(max_halfplane_violation(tr) <= 1e-7);
  }
}

TEST_CASE("support maximum over the grid recovers the radius at grid-aligned maxima") {
  // All three cases attain the radius in direction theta = 0, which every
  // grid contains, so max_theta h(theta) and the radius estimate agree.
  const ComplexMatrix shift = ComplexMatrix::from_entries(2, {0, 1, 0, 0});
  const ComplexMatrix sym =
      ComplexMatrix::from_entries(2, {0.1, 1.0 / 24.0, 1.0 / 24.0, 0.1});
  const ComplexMatrix ones = ComplexMatrix::from_entries(2, {1, 1, 1, 1});
  for (const ComplexMatrix& m : {shift, sym, ones}) {
    const QParameter qp = QParameter::from_real(0.6);
    const BoundaryTrace tr = trace_boundary(m, qp, 64, quick());
    const double hmax = *std::max_element(tr.support_values.begin(), tr.support_values.end());
    AscentConfig cfg = quick();
    cfg.restarts = 24;
    const double est = estimate_radius(m, qp, cfg).value;
    CHECK(std::abs(hmax - est) <= 1e-6);
  }
}

TEST_CASE("grid size is validated") {
  CHECK_THROWS_AS(
      trace_boundary(ComplexMatrix::identity(2), QParameter::from_real(0.5), 7, quick()),
      std::invalid_argument);
}
