#pragma once

#include <cstdint>
#include <functional>

#include "qnr/matrix.hpp"
#include "qnr/qparam.hpp"

namespace qnr {

// The q-numerical radius of A is the supremum of |<Ax, y>| over unit x, y
// with <x, y> = q. The inner maximization over y has a closed form: writing
// y = conj(q) x + p u with u a unit vector orthogonal to x and
// p = sqrt(1 - |q|^2), the values <Ax, y> fill the disk (circle when
// dim = 2) centered at q <Ax, x> with radius p ||Ax - <Ax, x> x||. Taking
// moduli,
//
//   g(x) = |q| |<Ax, x>| + p sqrt(||Ax||^2 - |<Ax, x>|^2),
//
// and the radius is the maximum of g over the unit sphere. The sampling
// oracle below validates this elimination against the raw definition.

/// Configuration for the projected-gradient sphere ascent.
struct AscentConfig {
  int restarts = 64;
  int max_iters = 2000;
  double tol = 1e-10;  // relative improvement threshold
  std::uint64_t seed = 0;
};

/// Best value found by the ascent together with replay diagnostics.
struct RadiusEstimate {
  double value = 0.0;
  UnitVector witness_x;
  UnitVector witness_y;
  int restarts_used = 0;
  bool converged = false;
  double max_gap = 0.0;  // improvement contributed by the final 3 restarts
};

/// g(x) as above: the supremum of |<Ax, y>| over admissible y for fixed x.
/// Rejects dim-1 inputs when |q| < 1 (no admissible y exists).
double q_objective(const ComplexMatrix& a, const UnitVector& x, const QParameter& qp);

/// Maximizes q_objective over the unit sphere by projected gradient ascent
/// with seeded random restarts. The result is a lower estimate of the true
/// radius by construction. Deterministic for a fixed seed.
RadiusEstimate estimate_radius(const ComplexMatrix& a, const QParameter& qp,
                               const AscentConfig& cfg = {});

/// Monte-Carlo lower bound straight from the definition: samples unit x,
/// unit z orthogonal to x and a phase, forms y = conj(q) x + p e^{i phi} z,
/// and returns the largest |<Ax, y>| seen. Deterministic per seed.
double sample_oracle(const ComplexMatrix& a, const QParameter& qp, int samples,
                     std::uint64_t seed);

/// Radius convention for 1-by-1 blocks: |t| * |q|. This is the value a
/// scalar diagonal block contributes once embedded in any larger space.
double scalar_radius(cplx t, const QParameter& qp);

// Generic sphere maximization, shared with the support-function tracer.
// The objective reports f(x) and, when grad is non-null, the Euclidean
// gradient 2 df/d(conj x).
struct SphereAscentResult {
  double value = 0.0;
  Vec arg;
  int restarts_used = 0;
  bool converged = false;
  double max_gap = 0.0;
};

using SphereObjective = std::function<double(const Vec& x, Vec* grad)>;

// extra_starts are ascended before the seeded random restarts; callers pass
// deterministic warm starts (the radius estimator seeds one from the top
// singular vector, which tends to sit in the basin of the maximizer).
SphereAscentResult sphere_maximize(int dim, const SphereObjective& f,
                                   const AscentConfig& cfg,
                                   const std::vector<Vec>& extra_starts = {});

}  // namespace qnr
