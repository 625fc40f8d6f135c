#pragma once

#include <complex>
#include <stdexcept>

namespace qnr {

/// Thrown for requests that are mathematically meaningless rather than
/// malformed: bounds at q = 0, dimension-1 operands with |q| < 1. The CLI
/// maps this to exit code 3.
class unsupported_request : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// The scalar q with its derived quantities |q| and p = sqrt(1 - |q|^2).
/// The radius machinery only ever consumes the modulus (estimates at q and
/// at any unit-phase multiple of q agree), but the original q is kept so
/// witnesses can satisfy <x, y> = q exactly.
class QParameter {
 public:
  static QParameter from(std::complex<double> q);
  static QParameter from_real(double q) { return from({q, 0.0}); }

  std::complex<double> q() const { return q_; }
  double modulus() const { return modulus_; }
  double p() const { return p_; }

 private:
  std::complex<double> q_;
  double modulus_ = 0.0;
  double p_ = 1.0;
};

inline QParameter QParameter::from(std::complex<double> q) {
  const double m = std::abs(q);
  if (!(m >= 0.0) || m > 1.0 + 1e-14) {
    throw std::invalid_argument("QParameter: |q| must lie in [0, 1]");
  }
  QParameter qp;
  qp.q_ = q;
  qp.modulus_ = std::min(m, 1.0);
  qp.p_ = std::sqrt(std::max(0.0, 1.0 - qp.modulus_ * qp.modulus_));
  return qp;
}

}  // namespace qnr
