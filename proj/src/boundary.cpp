#include "qnr/boundary.hpp"

#include <cmath>

namespace qnr {

namespace {

// f(x) = Re(c m) + p r with c = e^{-i theta} q, m = <Ax, x>,
// r = ||Ax - m x||. Euclidean gradient (2 d/d conj x):
//   d Re(c m) -> c v + conj(c) u
//   d r       -> (A^H A x - conj(m) v - m u) / r
// where v = A x and u = A^H x.
double support_objective(const ComplexMatrix& a, double p, cplx c, const Vec& x,
                         Vec* grad) {
  const int n = static_cast<int>(x.size());
  const Vec v = mat_apply(a, x);
  const cplx m = inner(v, x);
  double s = 0.0;
  for (const cplx& e : v) s += std::norm(e);
  double r2 = 0.0;  // ||Ax - m x||^2, stable form of ||Ax||^2 - |m|^2
  for (int i = 0; i < n; ++i) r2 += std::norm(v[i] - m * x[i]);
  const double r = std::sqrt(r2);
  const double value = (c * m).real() + p * r;
  if (grad == nullptr) return value;

  Vec u(n, cplx(0.0, 0.0));
  for (int j = 0; j < n; ++j) {
    cplx acc = 0.0;
    for (int i = 0; i < n; ++i) acc += std::conj(a.at(i, j)) * x[i];
    u[j] = acc;
  }
  grad->assign(n, cplx(0.0, 0.0));
  for (int i = 0; i < n; ++i) (*grad)[i] = c * v[i] + std::conj(c) * u[i];

  const double scale = std::sqrt(std::max(s, 1e-300));
  if (p > 0.0 && r > 1e-14 * scale) {
    Vec w(n, cplx(0.0, 0.0));  // A^H A x = A^H v
    for (int j = 0; j < n; ++j) {
      cplx acc = 0.0;
      for (int i = 0; i < n; ++i) acc += std::conj(a.at(i, j)) * v[i];
      w[j] = acc;
    }
    const cplx cm = std::conj(m);
    for (int i = 0; i < n; ++i) (*grad)[i] += p * (w[i] - cm * v[i] - m * u[i]) / r;
  }
  return value;
}

}  // namespace

double support_function(const ComplexMatrix& a, const QParameter& qp, double theta,
                        const AscentConfig& cfg) {
  if (a.dim() == 1 && qp.modulus() < 1.0) {
    throw unsupported_request(
        "dimension 1 with |q| < 1: no unit y with <x, y> = q exists");
  }
  const cplx c = std::polar(1.0, -theta) * qp.q();
  const double p = qp.p();
  const SphereObjective f = [&a, p, c](const Vec& x, Vec* grad) {
    return support_objective(a, p, c, x, grad);
  };
  return sphere_maximize(a.dim(), f, cfg, {top_singular_vector(a)}).value;
}

BoundaryTrace trace_boundary(const ComplexMatrix& a, const QParameter& qp,
                             int grid_size, const AscentConfig& cfg) {
  if (grid_size < 8) throw std::invalid_argument("trace_boundary: grid_size must be >= 8");
  BoundaryTrace tr;
  tr.thetas.resize(grid_size);
  tr.support_values.resize(grid_size);
  for (int k = 0; k < grid_size; ++k) {
    const double theta = 2.0 * M_PI * k / grid_size;
    tr.thetas[k] = theta;
    AscentConfig c = cfg;
    c.seed = cfg.seed + static_cast<std::uint64_t>(k) * 0x9e3779b9ull;
    tr.support_values[k] = support_function(a, qp, theta, c);
  }
  // Boundary vertices: intersections of consecutive support lines
  //   cos(theta) X + sin(theta) Y = h(theta).
  tr.points.resize(grid_size);
  for (int k = 0; k < grid_size; ++k) {
    const int k2 = (k + 1) % grid_size;
    const double t1 = tr.thetas[k], t2 = tr.thetas[k2];
    const double h1 = tr.support_values[k], h2 = tr.support_values[k2];
    const double det = std::sin(t2 - t1);
    const double px = (h1 * std::sin(t2) - h2 * std::sin(t1)) / det;
    const double py = (h2 * std::cos(t1) - h1 * std::cos(t2)) / det;
    tr.points[k] = cplx(px, py);
  }
  return tr;
}

double max_halfplane_violation(const BoundaryTrace& trace) {
  double worst = 0.0;
  for (const cplx& z : trace.points) {
    for (size_t k = 0; k < trace.thetas.size(); ++k) {
      const double proj =
          std::cos(trace.thetas[k]) * z.real() + std::sin(trace.thetas[k]) * z.imag();
      worst = std::max(worst, proj - trace.support_values[k]);
    }
  }
  return worst;
}

}  // namespace qnr
