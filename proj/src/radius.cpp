#include "qnr/radius.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qnr/rng.hpp"

namespace qnr {

namespace {

void check_operand(int dim, const QParameter& qp) {
  if (dim == 1 && qp.modulus() < 1.0) {
    throw unsupported_request(
        "dimension 1 with |q| < 1: no unit y with <x, y> = q exists");
  }
}

// Shared scratch of the objective: v = A x, m = <Ax, x>, r = ||Ax - m x||.
// r equals sqrt(||Ax||^2 - |m|^2), but the residual-norm form evaluates it
// without the difference-of-squares cancellation (the radicand clamps to 0
// by construction).
struct Evaluation {
  Vec v;
  cplx m;
  double s = 0.0;   // ||Ax||^2
  double r = 0.0;
};

Evaluation evaluate(const ComplexMatrix& a, const Vec& x) {
  Evaluation e;
  e.v = mat_apply(a, x);
  e.m = inner(e.v, x);
  double s = 0.0;
  for (const cplx& c : e.v) s += std::norm(c);
  e.s = s;
  double r2 = 0.0;
  for (size_t i = 0; i < e.v.size(); ++i) r2 += std::norm(e.v[i] - e.m * x[i]);
  e.r = std::sqrt(r2);
  return e;
}

Vec adjoint_apply(const ComplexMatrix& a, const Vec& x) {
  const int n = a.dim();
  Vec y(n, cplx(0.0, 0.0));
  for (int j = 0; j < n; ++j) {
    cplx s = 0.0;
    for (int i = 0; i < n; ++i) s += std::conj(a.at(i, j)) * x[i];
    y[j] = s;
  }
  return y;
}

// Deterministic unit vector orthogonal to x (dim >= 2).
Vec any_orthogonal_unit(const Vec& x) {
  const int n = static_cast<int>(x.size());
  int k = 0;
  for (int i = 1; i < n; ++i) {
    if (std::abs(x[i]) < std::abs(x[k])) k = i;
  }
  Vec e(n, cplx(0.0, 0.0));
  e[k] = 1.0;
  const cplx proj = inner(e, x);
  for (int i = 0; i < n; ++i) e[i] -= proj * x[i];
  const double en = norm(e);
  for (cplx& c : e) c /= en;
  return e;
}

}  // namespace

double q_objective(const ComplexMatrix& a, const UnitVector& x, const QParameter& qp) {
  check_operand(a.dim(), qp);
  if (a.dim() != x.dim()) throw std::invalid_argument("q_objective: dimension mismatch");
  const Evaluation e = evaluate(a, x.components());
  return qp.modulus() * std::abs(e.m) + qp.p() * e.r;
}

SphereAscentResult sphere_maximize(int dim, const SphereObjective& f,
                                   const AscentConfig& cfg,
                                   const std::vector<Vec>& extra_starts) {
  constexpr double kUnset = -std::numeric_limits<double>::infinity();
  SphereAscentResult best;
  best.value = kUnset;
  double best_before_final3 = kUnset;
  const int extras = static_cast<int>(extra_starts.size());
  const int restarts = std::max(1, cfg.restarts) + extras;

  for (int rs = 0; rs < restarts; ++rs) {
    if (rs == std::max(0, restarts - 3)) best_before_final3 = best.value;
    Vec x;
    if (rs < extras) {
      x = extra_starts[rs];
      const double xn = norm(x);
      if (!(xn > 0.0)) continue;
      for (cplx& c : x) c /= xn;
    } else {
      auto rng = make_rng(cfg.seed, static_cast<std::uint64_t>(rs - extras));
      x = random_unit_vector(dim, rng);
    }
    Vec grad(dim);
    double fx = f(x, &grad);
    bool converged = false;
    int stall = 0;

    for (int it = 0; it < cfg.max_iters; ++it) {
      // Riemannian gradient: remove the radial component.
      const cplx radial = inner(grad, x);
      Vec gt = grad;
      for (int i = 0; i < dim; ++i) gt[i] -= radial.real() * x[i];
      double gn2 = 0.0;
      for (const cplx& c : gt) gn2 += std::norm(c);
      if (gn2 <= 1e-28 * std::max(1.0, fx * fx)) {
        converged = true;
        break;
      }

      // Backtracking line search along the projected step. The sufficient
      // decrease constant 0.5 keeps accepted steps inside the productive
      // part of the parabola; small constants let steps land near the
      // zero-progress point and the ascent crawls.
      double step = 1.0;
      bool accepted = false;
      Vec xc;
      double fc = fx;
      for (int ls = 0; ls < 60; ++ls) {
        xc = x;
        for (int i = 0; i < dim; ++i) xc[i] += step * gt[i];
        const double xn = norm(xc);
        for (cplx& c : xc) c /= xn;
        fc = f(xc, nullptr);
        if (fc > fx + 0.5 * step * gn2) {
          accepted = true;
          break;
        }
        step *= 0.5;
      }
      if (!accepted) {
        converged = true;  // no ascent direction made progress
        break;
      }
      const double rel = (fc - fx) / std::max(1.0, std::abs(fc));
      x = std::move(xc);
      fx = f(x, &grad);
      if (rel < cfg.tol) {
        if (++stall >= 2) {
          converged = true;
          break;
        }
      } else {
        stall = 0;
      }
    }

    if (fx > best.value) {
      best.value = fx;
      best.arg = x;
      best.converged = converged;
    }
  }
  best.restarts_used = restarts;
  best.max_gap =
      std::isfinite(best_before_final3) ? std::max(0.0, best.value - best_before_final3) : 0.0;
  return best;
}

namespace {

// Objective and gradient for g(x) = |q| |m| + p r. Euclidean gradient
// (2 d/d conj x):
//   d|m|      -> (conj(m) v + m u) / |m|
//   d r       -> (A^H A x - conj(m) v - m u) / r
// with subgradient 0 for either term at its non-smooth point.
double q_objective_grad(const ComplexMatrix& a, const QParameter& qp, const Vec& x,
                        Vec* grad) {
  const Evaluation e = evaluate(a, x);
  const double qm = qp.modulus();
  const double p = qp.p();
  const double absm = std::abs(e.m);
  const double value = qm * absm + p * e.r;
  if (grad == nullptr) return value;

  const int n = static_cast<int>(x.size());
  grad->assign(n, cplx(0.0, 0.0));
  Vec u;  // A^H x, computed lazily
  const double scale = std::sqrt(std::max(e.s, 1e-300));

  if (qm > 0.0 && absm > 1e-14 * scale) {
    u = adjoint_apply(a, x);
    const cplx cm = std::conj(e.m) / absm;
    const cplx mm = e.m / absm;
    for (int i = 0; i < n; ++i) (*grad)[i] += qm * (cm * e.v[i] + mm * u[i]);
  }
  if (p > 0.0 && e.r > 1e-14 * scale) {
    if (u.empty()) u = adjoint_apply(a, x);
    const Vec w = adjoint_apply(a, e.v);  // A^H A x
    const cplx cm = std::conj(e.m);
    for (int i = 0; i < n; ++i) {
      (*grad)[i] += p * (w[i] - cm * e.v[i] - e.m * u[i]) / e.r;
    }
  }
  return value;
}

}  // namespace

RadiusEstimate estimate_radius(const ComplexMatrix& a, const QParameter& qp,
                               const AscentConfig& cfg) {
  check_operand(a.dim(), qp);
  if (!a.all_finite()) throw std::invalid_argument("estimate_radius: non-finite entries");
  const int n = a.dim();

  const SphereObjective f = [&a, &qp](const Vec& x, Vec* grad) {
    return q_objective_grad(a, qp, x, grad);
  };
  // One deterministic warm start from the top singular vector: it often
  // sits in the basin of the maximizer when competing local maxima are
  // close in value and the random restarts risk missing the global one.
  const SphereAscentResult r = sphere_maximize(n, f, cfg, {top_singular_vector(a)});

  // Reconstruct the witness pair. y = |q| x + p e^{i phi} z with z the
  // normalized component of Ax orthogonal to x and phi aligning the two
  // terms of g; a final phase on y turns <x, y> = |q| into <x, y> = q.
  const Vec& x = r.arg;
  const Evaluation e = evaluate(a, x);
  const double qm = qp.modulus();
  const double p = qp.p();

  Vec y(n, cplx(0.0, 0.0));
  for (int i = 0; i < n; ++i) y[i] = qm * x[i];
  if (p > 0.0) {
    Vec z;
    if (e.r > 1e-150) {
      z = e.v;
      for (int i = 0; i < n; ++i) z[i] -= e.m * x[i];
      for (cplx& c : z) c /= e.r;
    } else {
      z = any_orthogonal_unit(x);
    }
    const double absm = std::abs(e.m);
    const cplx phase = absm > 0.0 ? std::conj(e.m) / absm : cplx(1.0, 0.0);
    for (int i = 0; i < n; ++i) y[i] += p * phase * z[i];
  }
  if (qm > 0.0) {
    const cplx qphase = qp.q() / qm;  // rotate so <x, y> lands on q itself
    for (cplx& c : y) c *= std::conj(qphase);
  }

  RadiusEstimate est{r.value, UnitVector::normalized(x), UnitVector::normalized(y),
                     r.restarts_used, r.converged, r.max_gap};
  return est;
}

double sample_oracle(const ComplexMatrix& a, const QParameter& qp, int samples,
                     std::uint64_t seed) {
  check_operand(a.dim(), qp);
  if (!a.all_finite()) throw std::invalid_argument("sample_oracle: non-finite entries");
  if (samples <= 0) throw std::invalid_argument("sample_oracle: samples must be positive");
  const int n = a.dim();
  const double p = qp.p();
  auto rng = make_rng(seed, 0x5a5a5a5aull);
  std::uniform_real_distribution<double> unif(0.0, 2.0 * M_PI);

  double best = 0.0;
  for (int s = 0; s < samples; ++s) {
    const Vec x = random_unit_vector(n, rng);
    Vec y(n, cplx(0.0, 0.0));
    for (int i = 0; i < n; ++i) y[i] = std::conj(qp.q()) * x[i];
    if (p > 0.0) {
      // Unit direction in the orthogonal complement of x.
      Vec z = random_gaussian_vector(n, rng);
      const cplx proj = inner(z, x);
      for (int i = 0; i < n; ++i) z[i] -= proj * x[i];
      const double zn = norm(z);
      if (zn < 1e-12) {
        --s;  // retry the degenerate draw
        continue;
      }
      for (cplx& c : z) c /= zn;
      const cplx phase = std::polar(1.0, unif(rng));
      for (int i = 0; i < n; ++i) y[i] += p * phase * z[i];
    }
    const double val = std::abs(inner(mat_apply(a, x), y));
    best = std::max(best, val);
  }
  return best;
}

double scalar_radius(cplx t, const QParameter& qp) {
  return std::abs(t) * qp.modulus();
}

}  // namespace qnr
