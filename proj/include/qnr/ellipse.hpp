#pragma once

#include "qnr/matrix.hpp"
#include "qnr/qparam.hpp"

namespace qnr {

/// Canonical data of a 2-by-2 matrix: unitarily similar to
/// e^{it} [[gamma, a], [b, gamma]] with 0 <= b <= a. The q-range of the
/// matrix is e^{it} (gamma q + E) where E is the filled ellipse with real
/// semi-axis c + p d and imaginary semi-axis d + p c, c = (a+b)/2,
/// d = (a-b)/2, p = sqrt(1-q^2).
struct Ellipse2x2 {
  double t = 0.0;
  cplx gamma;
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double d = 0.0;
  double p = 1.0;
};

struct Exact2x2Result {
  Ellipse2x2 ellipse;
  double radius = 0.0;
};

/// Exact q-numerical radius of a 2-by-2 matrix. Complex q is reduced to its
/// modulus (the radius only depends on |q|). The boundary maximum over the
/// ellipse parameter is located on a dense 4096-point grid and then refined
/// locally to 1e-12.
Exact2x2Result exact_2x2(const ComplexMatrix& a, const QParameter& qp);

/// Point of the range boundary at ellipse parameter s (with r = 1).
cplx ellipse_boundary_point(const Ellipse2x2& e, double q, double s);

}  // namespace qnr
