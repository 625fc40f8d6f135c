#include "qnr/bounds.hpp"

#include <algorithm>
#include <cmath>

#include "qnr/ellipse.hpp"

namespace qnr {

double k_factor(const QParameter& qp) {
  const double q = qp.modulus();
  if (q <= 0.0) throw unsupported_request("k_factor: unbounded at q = 0");
  return (q + 2.0 * std::sqrt(std::max(0.0, 1.0 - q * q))) / q;
}

double block_radius(const ComplexMatrix& block, const QParameter& qp,
                    const AscentConfig& cfg) {
  switch (block.dim()) {
    case 1:
      return scalar_radius(block.at(0, 0), qp);
    case 2:
      return exact_2x2(block, qp).radius;
    default:
      return estimate_radius(block, qp, cfg).value;
  }
}

namespace {

void require_positive_q(const QParameter& qp) {
  if (qp.modulus() <= 0.0) {
    throw unsupported_request("sandwich bounds require |q| in (0, 1]");
  }
}

// Fills radii/lower/upper/whole and verdicts; retries the whole-matrix
// estimate with an escalated restart budget once if the lower side misses.
void evaluate_report(BoundsReport& rep, const std::vector<ComplexMatrix>& blocks,
                     const ComplexMatrix& whole, const QParameter& qp,
                     const BoundsConfig& cfg) {
  rep.q = qp.q();
  rep.k_factor = k_factor(qp);
  rep.cfg = cfg.ascent;
  rep.verdict_tol = cfg.verdict_tol;

  rep.block_radii.clear();
  rep.block_radii.reserve(blocks.size());
  for (const ComplexMatrix& b : blocks) {
    rep.block_radii.push_back(block_radius(b, qp, cfg.ascent));
  }
  rep.lower = *std::max_element(rep.block_radii.begin(), rep.block_radii.end());
  rep.upper = rep.k_factor * rep.lower;

  rep.whole_estimate = estimate_radius(whole, qp, cfg.ascent).value;
  rep.escalated = false;
  if (rep.whole_estimate < rep.lower - cfg.verdict_tol && cfg.escalation_factor > 1) {
    AscentConfig esc = cfg.ascent;
    esc.restarts *= cfg.escalation_factor;
    // Fresh restart streams: re-walking the first starts of the same seed
    // would waste most of the escalated budget.
    esc.seed = cfg.ascent.seed ^ 0x715A5AD00DFEEDull;
    const double retry = estimate_radius(whole, qp, esc).value;
    rep.whole_estimate = std::max(rep.whole_estimate, retry);
    rep.escalated = true;
  }
  rep.lower_slack = rep.whole_estimate - rep.lower;
  rep.upper_slack = rep.upper - rep.whole_estimate;
  rep.lower_ok = rep.lower_slack >= -cfg.verdict_tol;
  rep.upper_ok = rep.upper_slack >= -cfg.verdict_tol;
}

}  // namespace

BoundsReport direct_sum_bounds(const std::vector<ComplexMatrix>& blocks,
                               const QParameter& qp, const BoundsConfig& cfg) {
  require_positive_q(qp);
  if (blocks.empty()) throw std::invalid_argument("direct_sum_bounds: empty block list");
  const int d = blocks.front().dim();
  for (const ComplexMatrix& b : blocks) {
    if (b.dim() != d) throw std::invalid_argument("direct_sum_bounds: blocks must share dimension");
  }
  BoundsReport rep;
  rep.family_label = "direct_sum";
  rep.n = static_cast<int>(blocks.size());
  rep.note = "finite direct sums only";
  rep.block_labels.resize(blocks.size());
  for (size_t k = 0; k < blocks.size(); ++k) rep.block_labels[k] = static_cast<int>(k);
  evaluate_report(rep, blocks, block_diagonal(blocks), qp, cfg);
  return rep;
}

BoundsReport theorem_bounds(const StructuredSpec& spec, const QParameter& qp,
                            const BoundsConfig& cfg) {
  require_positive_q(qp);
  spec.validate();
  BoundsReport rep;
  rep.family_label = family_name(spec.family);
  rep.n = spec.n;
  rep.block_labels = block_labels(spec.family, spec.n);
  evaluate_report(rep, reduce_to_blocks(spec), build_structured(spec), qp, cfg);
  return rep;
}

std::string special_case_name(SpecialCase tag) {
  switch (tag) {
    case SpecialCase::T_zero: return "T_zero";
    case SpecialCase::S_zero: return "S_zero";
    case SpecialCase::T_equals_S: return "T_equals_S";
    case SpecialCase::S_equals_iT: return "S_equals_iT";
  }
  throw std::logic_error("special_case_name: unknown tag");
}

SpecialCase special_case_from_name(const std::string& name) {
  for (SpecialCase tag : {SpecialCase::T_zero, SpecialCase::S_zero, SpecialCase::T_equals_S,
                          SpecialCase::S_equals_iT}) {
    if (special_case_name(tag) == name) return tag;
  }
  throw std::invalid_argument("unknown special case: " + name);
}

BoundsReport special_case_bounds(SpecialCase tag, const ComplexMatrix& base, int n,
                                 const QParameter& qp, const BoundsConfig& cfg,
                                 Family family) {
  if (family != Family::tridiagonal && family != Family::anti_tridiagonal) {
    throw std::invalid_argument("special_case_bounds: tridiagonal layouts only");
  }
  StructuredSpec spec;
  spec.family = family;
  spec.n = n;
  const ComplexMatrix zero(base.dim());
  ComplexMatrix i_base = base;
  i_base *= cplx(0.0, 1.0);
  switch (tag) {
    case SpecialCase::T_zero: spec.blocks = {zero, base}; break;
    case SpecialCase::S_zero: spec.blocks = {base, zero}; break;
    case SpecialCase::T_equals_S: spec.blocks = {base, base}; break;
    case SpecialCase::S_equals_iT: spec.blocks = {base, i_base}; break;
  }
  BoundsReport rep = theorem_bounds(spec, qp, cfg);
  rep.note = "special case " + special_case_name(tag);

  // Closed-form block coefficients: each block is coefficient * base (a
  // scalar multiple), so its radius is coefficient * radius(base).
  const FamilyConstants fc = family_constants(n);
  rep.coefficients.resize(n);
  for (int k = 1; k <= n; ++k) {
    const double ck = fc.cosines[k - 1];
    double coeff = 0.0;
    switch (tag) {
      case SpecialCase::T_zero: coeff = std::abs(ck); break;
      case SpecialCase::S_zero: coeff = 1.0; break;
      case SpecialCase::T_equals_S: coeff = std::abs(1.0 + ck); break;
      case SpecialCase::S_equals_iT: coeff = std::abs(cplx(1.0, ck)); break;
    }
    rep.coefficients[k - 1] = coeff;
  }
  return rep;
}

}  // namespace qnr
