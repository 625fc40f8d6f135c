#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qnr/qparam.hpp"
#include "qnr/radius.hpp"
#include "qnr/structured.hpp"

namespace qnr {

/// Inflation factor K(q) = (|q| + 2 sqrt(1 - |q|^2)) / |q|; the gap between
/// the two sides of every sandwich bound. Rejects q = 0 (unbounded).
double k_factor(const QParameter& qp);

/// Two-sided bound evaluation: lower = max of per-block radii,
/// upper = K(q) * lower, whole_estimate = radius estimate of the assembled
/// matrix. Verdicts use a one-sided tolerance since the whole estimate
/// under-approximates the true radius.
struct BoundsReport {
  std::string family_label;
  int n = 0;
  cplx q;
  double k_factor = 1.0;
  std::vector<int> block_labels;
  std::vector<double> block_radii;
  double lower = 0.0;
  double upper = 0.0;
  double whole_estimate = 0.0;
  bool lower_ok = false;
  bool upper_ok = false;
  double lower_slack = 0.0;  // whole_estimate - lower
  double upper_slack = 0.0;  // upper - whole_estimate
  bool escalated = false;    // restart budget was raised to confirm the lower side
  std::vector<double> coefficients;  // special-case closed forms, when applicable
  std::string note;
  AscentConfig cfg;
  double verdict_tol = 1e-6;
};

struct BoundsConfig {
  AscentConfig ascent;
  double verdict_tol = 1e-6;
  int escalation_factor = 4;  // restart multiplier tried once on a lower miss
};

/// Per-block radius with the strongest oracle for the size: the scalar
/// convention at d = 1, the exact ellipse at d = 2, the ascent estimate
/// otherwise.
double block_radius(const ComplexMatrix& block, const QParameter& qp,
                    const AscentConfig& cfg);

/// Bounds for a block-diagonal (finite direct sum) matrix.
BoundsReport direct_sum_bounds(const std::vector<ComplexMatrix>& blocks,
                               const QParameter& qp, const BoundsConfig& cfg = {});

/// Bounds for a structured family matrix, blocks from its reduction.
BoundsReport theorem_bounds(const StructuredSpec& spec, const QParameter& qp,
                            const BoundsConfig& cfg = {});

/// Tridiagonal special cases with closed-form block coefficients.
enum class SpecialCase { T_zero, S_zero, T_equals_S, S_equals_iT };
std::string special_case_name(SpecialCase tag);
SpecialCase special_case_from_name(const std::string& name);

BoundsReport special_case_bounds(SpecialCase tag, const ComplexMatrix& base, int n,
                                 const QParameter& qp, const BoundsConfig& cfg = {},
                                 Family family = Family::tridiagonal);

}  // namespace qnr
