#include "qnr/ellipse.hpp"

#include <cmath>

namespace qnr {

namespace {

// Unit vector x with <Bx, x> = 0 for a trace-zero 2-by-2 matrix B,
// parametrized as x = (cos(theta), e^{i phi} sin(theta)). With
// B = [[beta, u], [v, -beta]] the form value is
//   beta cos(2 theta) + (sin(2 theta) / 2) (u e^{i phi} + v e^{-i phi}),
// so it suffices to pick phi making w = u e^{i phi} + v e^{-i phi} a real
// multiple of beta and then solve tan(2 theta) = -2 / t.
Vec zero_diagonal_vector(const ComplexMatrix& b) {
  const cplx beta = b.at(0, 0);
  const cplx u = b.at(0, 1);
  const cplx v = b.at(1, 0);
  if (std::abs(beta) < 1e-300) return {cplx(1.0, 0.0), cplx(0.0, 0.0)};

  const cplx c1 = std::conj(beta) * u;
  const cplx c2 = std::conj(beta) * v;
  // Im(c1 e^{i phi} + c2 e^{-i phi}) = A cos(phi) + B sin(phi).
  const double acoef = c1.imag() + c2.imag();
  const double bcoef = c1.real() - c2.real();
  const double phi = std::atan2(-acoef, bcoef);
  const cplx eip = std::polar(1.0, phi);
  const cplx w = u * eip + v * std::conj(eip);
  const double t = (std::conj(beta) * w).real() / std::norm(beta);
  const double two_theta = std::atan2(-2.0, t);
  const double th = 0.5 * two_theta;
  return {cplx(std::cos(th), 0.0), eip * std::sin(th)};
}

double ellipse_modulus(const Ellipse2x2& e, double q, double s) {
  const double cr = e.c + e.p * e.d;
  const double ci = e.d + e.p * e.c;
  const cplx z = e.gamma * q + cplx(cr * std::cos(s), ci * std::sin(s));
  return std::abs(z);
}

}  // namespace

cplx ellipse_boundary_point(const Ellipse2x2& e, double q, double s) {
  const double cr = e.c + e.p * e.d;
  const double ci = e.d + e.p * e.c;
  return std::polar(1.0, e.t) * (e.gamma * q + cplx(cr * std::cos(s), ci * std::sin(s)));
}

Exact2x2Result exact_2x2(const ComplexMatrix& m, const QParameter& qp) {
  if (m.dim() != 2) throw std::invalid_argument("exact_2x2: matrix must be 2-by-2");
  const double q = qp.modulus();

  // Step 1: constant-diagonal unitary similarity. Both diagonal entries of
  // U^* M U equal tr(M)/2 when the first basis vector x satisfies
  // <Bx, x> = 0 for B = M - (tr/2) I.
  const cplx half_trace = 0.5 * (m.at(0, 0) + m.at(1, 1));
  ComplexMatrix b = m;
  b.at(0, 0) -= half_trace;
  b.at(1, 1) -= half_trace;
  const Vec x = zero_diagonal_vector(b);
  const Vec y = {-std::conj(x[1]), std::conj(x[0])};  // orthonormal complement

  // Off-diagonal entries in the rotated basis.
  const Vec bx = mat_apply(b, x);
  const Vec by = mat_apply(b, y);
  cplx ap = inner(by, x);  // (U^* B U)_{01}
  cplx bp = inner(bx, y);  // (U^* B U)_{10}

  // Step 2: split a joint phase e^{it} and a relative diagonal phase so both
  // off-diagonal entries become nonnegative; undefined phases default to 0.
  const double arg_a = std::abs(ap) > 0.0 ? std::arg(ap) : 0.0;
  const double arg_b = std::abs(bp) > 0.0 ? std::arg(bp) : 0.0;
  double t = 0.5 * (arg_a + arg_b);
  double a = std::abs(ap);
  double bb = std::abs(bp);
  if (bb > a) std::swap(a, bb);  // flip permutation enforces b <= a

  Ellipse2x2 e;
  e.t = t;
  e.gamma = half_trace * std::polar(1.0, -t);
  e.a = a;
  e.b = bb;
  e.c = 0.5 * (a + bb);
  e.d = 0.5 * (a - bb);
  e.p = qp.p();

  // Step 3: maximize |gamma q + (c + p d) cos s + i (d + p c) sin s| on a
  // dense grid, then refine the bracket around the best point.
  constexpr int kGrid = 4096;
  double best_s = 0.0;
  double best = -1.0;
  for (int k = 0; k < kGrid; ++k) {
    const double s = 2.0 * M_PI * k / kGrid;
    const double val = ellipse_modulus(e, q, s);
    if (val > best) {
      best = val;
      best_s = s;
    }
  }
  double lo = best_s - 2.0 * M_PI / kGrid;
  double hi = best_s + 2.0 * M_PI / kGrid;
  while (hi - lo > 1e-12) {
    const double s1 = lo + (hi - lo) / 3.0;
    const double s2 = hi - (hi - lo) / 3.0;
    if (ellipse_modulus(e, q, s1) < ellipse_modulus(e, q, s2)) {
      lo = s1;
    } else {
      hi = s2;
    }
  }
  const double refined = ellipse_modulus(e, q, 0.5 * (lo + hi));
  return {e, std::max(best, refined)};
}

}  // namespace qnr
