#include "qnr/verify.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "qnr/ellipse.hpp"
#include "qnr/parallel.hpp"
#include "qnr/rng.hpp"
#include "qnr/structured.hpp"

namespace qnr {

bool SuiteReport::overall_pass() const { return total_failures() == 0; }

int SuiteReport::total_failures() const {
  int f = 0;
  for (const PropertyRecord& r : records) f += r.failures;
  return f;
}

namespace {

struct Contribution {
  std::string anchor;
  bool pass = true;
  double margin = 0.0;
};

struct TaskResult {
  TrialRef ref;
  std::vector<Contribution> contribs;
};

using Task = std::function<TaskResult()>;

// Runs tasks in parallel, then folds contributions in task order into
// records registered up front, so the report is independent of scheduling.
class SuiteBuilder {
 public:
  SuiteBuilder(std::string suite, const SuiteConfig& cfg) : cfg_(cfg) {
    report_.suite = std::move(suite);
    report_.seed = cfg.seed;
  }

  void declare(const std::string& anchor, const std::string& title) {
    if (index_.count(anchor)) return;
    index_[anchor] = report_.records.size();
    PropertyRecord rec;
    rec.anchor = anchor;
    rec.title = title;
    report_.records.push_back(std::move(rec));
  }

  void add_task(Task t) { tasks_.push_back(std::move(t)); }

  SuiteReport run() {
    std::vector<TaskResult> results(tasks_.size());
    parallel_for(
        tasks_.size(), [&](std::size_t i) { results[i] = tasks_[i](); }, cfg_.threads);
    for (const TaskResult& tr : results) {
      for (const Contribution& c : tr.contribs) {
        auto it = index_.find(c.anchor);
        if (it == index_.end()) throw std::logic_error("undeclared anchor: " + c.anchor);
        PropertyRecord& rec = report_.records[it->second];
        rec.trials += 1;
        if (!c.pass) {
          rec.failures += 1;
          if (rec.failure_samples.size() < 10) rec.failure_samples.push_back(tr.ref);
        }
        if (c.margin < rec.worst_slack) {
          rec.worst_slack = c.margin;
          rec.worst = tr.ref;
        }
      }
    }
    std::sort(report_.records.begin(), report_.records.end(),
              [](const PropertyRecord& a, const PropertyRecord& b) { return a.anchor < b.anchor; });
    return std::move(report_);
  }

 private:
  const SuiteConfig& cfg_;
  SuiteReport report_;
  std::map<std::string, std::size_t> index_;
  std::vector<Task> tasks_;
};

Contribution equality_check(const std::string& anchor, double lhs, double rhs, double tol) {
  const double margin = tol - std::abs(lhs - rhs);
  return {anchor, margin >= 0.0, margin};
}

Contribution upper_check(const std::string& anchor, double lhs, double rhs, double tol) {
  // lhs <= rhs + tol
  const double margin = rhs + tol - lhs;
  return {anchor, margin >= 0.0, margin};
}

// Failure policy: a violation at the base budget retries once with a x4
// fresh-stream budget; only the retry's verdict counts. Distinguishes an
// optimizer shortfall from a genuine counterexample.
TaskResult with_escalation(const AscentConfig& base,
                           const std::function<TaskResult(const AscentConfig&)>& attempt) {
  TaskResult first = attempt(base);
  for (const Contribution& c : first.contribs) {
    if (!c.pass) {
      AscentConfig esc = base;
      esc.restarts *= 4;
      esc.seed ^= 0xE5CA1A7Eull;
      return attempt(esc);
    }
  }
  return first;
}

double pick_q(const SuiteConfig& cfg, int t) {
  return cfg.q_grid[static_cast<size_t>(t) % cfg.q_grid.size()];
}

int pick_dim(const SuiteConfig& cfg, int t) {
  return cfg.dims[static_cast<size_t>(t) % cfg.dims.size()];
}

}  // namespace

SuiteReport run_axiom_suite(const SuiteConfig& cfg) {
  SuiteBuilder sb("axioms", cfg);
  sb.declare("radius.scale_homogeneity", "radius of a scalar multiple scales by the modulus");
  sb.declare("radius.subadditive", "radius of a sum is at most the sum of radii");
  sb.declare("radius.unitary_similarity", "radius is invariant under unitary similarity");
  sb.declare("radius.q_phase", "radius depends on q only through its modulus");
  sb.declare("two_by_two.canonical_ellipse", "ascent agrees with the exact 2x2 ellipse radius");

  for (int t = 0; t < cfg.trials; ++t) {
    sb.add_task([t, &cfg]() -> TaskResult {
      auto rng = make_rng(cfg.seed, 0x41580000ull + static_cast<std::uint64_t>(t));
      const int dim = pick_dim(cfg, t);
      const double q = pick_q(cfg, t);
      const QParameter qp = QParameter::from_real(q);
      AscentConfig base = cfg.ascent;
      base.seed = cfg.seed + 17 * static_cast<std::uint64_t>(t);

      const ComplexMatrix a = random_unit_norm_matrix(dim, rng);
      const ComplexMatrix b = random_unit_norm_matrix(dim, rng);
      std::normal_distribution<double> gauss(0.0, 1.0);
      const cplx lambda(gauss(rng), gauss(rng));
      const ComplexMatrix u = random_unitary(dim, rng);
      std::uniform_real_distribution<double> unif(0.0, 2.0 * M_PI);
      const cplx phase = std::polar(1.0, unif(rng));
      const ComplexMatrix a2 = random_unit_norm_matrix(2, rng);

      return with_escalation(base, [&](const AscentConfig& ac) {
        const double wa = estimate_radius(a, qp, ac).value;
        const double wb = estimate_radius(b, qp, ac).value;

        ComplexMatrix la = a;
        la *= lambda;
        const double w_la = estimate_radius(la, qp, ac).value;

        const double w_sum = estimate_radius(a + b, qp, ac).value;

        const ComplexMatrix conj_a = matmul(matmul(adjoint(u), a), u);
        const double w_conj = estimate_radius(conj_a, qp, ac).value;

        const QParameter qp_rot = QParameter::from(phase * qp.q());
        const double w_rot = estimate_radius(a, qp_rot, ac).value;

        const double est2 = estimate_radius(a2, qp, ac).value;
        const double exact2 = exact_2x2(a2, qp).radius;

        TaskResult res;
        res.ref = {cfg.seed, t, q, "dim=" + std::to_string(dim), {a, b, a2}};
        res.contribs = {
            equality_check("radius.scale_homogeneity", w_la, std::abs(lambda) * wa, cfg.tol),
            upper_check("radius.subadditive", w_sum, wa + wb, cfg.tol),
            equality_check("radius.unitary_similarity", w_conj, wa, cfg.tol),
            equality_check("radius.q_phase", w_rot, wa, cfg.tol),
            equality_check("two_by_two.canonical_ellipse", est2, exact2, cfg.tol),
        };
        return res;
      });
    });
  }
  return sb.run();
}

SuiteReport run_block_lemma_suite(const SuiteConfig& cfg) {
  SuiteBuilder sb("blocks", cfg);
  sb.declare("offdiag.swap", "swapping the two off-diagonal blocks keeps the radius");
  sb.declare("offdiag.corner_phase", "a unit phase on one off-diagonal block keeps the radius");
  sb.declare("diag.swap", "swapping the two diagonal blocks keeps the radius");

  for (int t = 0; t < cfg.trials; ++t) {
    sb.add_task([t, &cfg]() -> TaskResult {
      auto rng = make_rng(cfg.seed, 0xB10C0000ull + static_cast<std::uint64_t>(t));
      const int d = cfg.block_dims[static_cast<size_t>(t) % cfg.block_dims.size()];
      const double q = pick_q(cfg, t);
      const QParameter qp = QParameter::from_real(q);
      AscentConfig base_cfg = cfg.ascent;
      base_cfg.seed = cfg.seed + 31 * static_cast<std::uint64_t>(t);

      const ComplexMatrix tm = random_unit_norm_matrix(d, rng);
      const ComplexMatrix sm = random_unit_norm_matrix(d, rng);
      std::uniform_real_distribution<double> unif(0.0, 2.0 * M_PI);
      const cplx phase = std::polar(1.0, unif(rng));

      auto corner = [d](const ComplexMatrix& top, const ComplexMatrix& bottom) {
        BlockGrid g(2, std::vector<std::optional<ComplexMatrix>>(2));
        g[0][1] = top;
        g[1][0] = bottom;
        return assemble_blocks(g, d);
      };
      auto diag2 = [d](const ComplexMatrix& first, const ComplexMatrix& second) {
        BlockGrid g(2, std::vector<std::optional<ComplexMatrix>>(2));
        g[0][0] = first;
        g[1][1] = second;
        return assemble_blocks(g, d);
      };

      ComplexMatrix phased_s = sm;
      phased_s *= phase;

      return with_escalation(base_cfg, [&](const AscentConfig& ac) {
        const double base = estimate_radius(corner(tm, sm), qp, ac).value;
        const double swapped = estimate_radius(corner(sm, tm), qp, ac).value;
        const double phased = estimate_radius(corner(tm, phased_s), qp, ac).value;
        const double dsum = estimate_radius(diag2(tm, sm), qp, ac).value;
        const double dsum_swapped = estimate_radius(diag2(sm, tm), qp, ac).value;

        TaskResult res;
        res.ref = {cfg.seed, t, q, "d=" + std::to_string(d), {tm, sm}};
        res.contribs = {
            equality_check("offdiag.swap", base, swapped, cfg.tol),
            equality_check("offdiag.corner_phase", phased, base, cfg.tol),
            equality_check("diag.swap", dsum, dsum_swapped, cfg.tol),
        };
        return res;
      });
    });
  }
  return sb.run();
}

namespace {

std::string equality_anchor(Family f) {
  switch (f) {
    case Family::tridiagonal: return "equality.q1.tridiagonal";
    case Family::alpha_tridiagonal:
    case Family::omega_tridiagonal:
    case Family::anti_tridiagonal: return "equality.q1.tridiagonal_variants";
    case Family::circulant: return "equality.q1.circulant";
    case Family::skew_circulant: return "equality.q1.skew_circulant";
    case Family::imaginary_circulant: return "equality.q1.imaginary_circulant";
    case Family::imaginary_skew_circulant: return "equality.q1.imaginary_skew_circulant";
  }
  throw std::logic_error("equality_anchor: unknown family");
}

// Sandwich + (at q = 1) equality contributions from a bounds report.
void sandwich_contribs(const BoundsReport& rep, const std::string& anchor,
                       const std::string& eq_anchor, double tol,
                       std::vector<Contribution>& out) {
  const double margin = std::min(rep.lower_slack, rep.upper_slack) + tol;
  out.push_back({anchor, rep.lower_ok && rep.upper_ok, margin});
  if (std::abs(rep.q) >= 1.0 - 1e-15 && !eq_anchor.empty()) {
    const double eq_margin = tol - std::abs(rep.whole_estimate - rep.lower);
    out.push_back({eq_anchor, eq_margin >= 0.0, eq_margin});
  }
}

StructuredSpec make_spec(Family fam, int n, std::vector<ComplexMatrix> blocks) {
  StructuredSpec spec;
  spec.family = fam;
  spec.n = n;
  spec.blocks = std::move(blocks);
  return spec;
}

ComplexMatrix scalar_matrix(double v) {
  ComplexMatrix m(1);
  m.at(0, 0) = v;
  return m;
}

}  // namespace

SuiteReport run_sandwich_suite(const SuiteConfig& cfg) {
  SuiteBuilder sb("sandwich", cfg);
  for (Family f : all_families()) {
    sb.declare("sandwich." + family_name(f),
               "block-radius sandwich for the " + family_name(f) + " layout");
    sb.declare(equality_anchor(f), "whole radius equals the block maximum at q = 1");
  }
  sb.declare("sandwich.tridiagonal.n2", "two-block tridiagonal corollary");
  sb.declare("sandwich.tridiagonal.n3", "three-block tridiagonal corollary");
  sb.declare("sandwich.tridiagonal.fixed_case", "integer tridiagonal example with scalar blocks");
  sb.declare("sandwich.circulant.n2", "two-block circulant corollary");
  sb.declare("sandwich.circulant.fixed_case", "symmetric 2x2 example with known closed form");
  sb.declare("sandwich.circulant.identity_blocks", "identity-block circulant closed form");
  sb.declare("sandwich.circulant.repeated_block", "circulant with both blocks equal");
  sb.declare("sandwich.skew_circulant.n2", "two-block skew circulant corollary");
  sb.declare("sandwich.imaginary_circulant.n2", "two-block imaginary circulant corollary");
  sb.declare("sandwich.imaginary_skew_circulant.n2",
             "two-block imaginary skew circulant corollary");
  for (const char* fam : {"tridiagonal", "anti_tridiagonal"}) {
    for (const char* tag : {"T_zero", "S_zero", "T_equals_S", "S_equals_iT"}) {
      sb.declare(std::string("special.") + fam + "." + tag,
                 std::string("closed-form block coefficients, ") + fam + " with " + tag);
    }
  }
  sb.declare("direct_sum.pair", "two-block direct sum sandwich");
  sb.declare("direct_sum.finite", "finite direct sum sandwich");

  BoundsConfig bc;
  bc.ascent = cfg.sandwich_ascent;
  bc.verdict_tol = cfg.sandwich_tol;

  // Main grid: family x n x d x q x instances.
  std::uint64_t stream = 0x5A000000ull;
  for (Family fam : all_families()) {
    for (int n : cfg.n_values) {
      for (int d : cfg.block_dims) {
        for (double q : cfg.q_grid) {
          for (int s = 0; s < cfg.sandwich_seeds; ++s) {
            const std::uint64_t my_stream = stream++;
            sb.add_task([fam, n, d, q, s, my_stream, &cfg, bc]() -> TaskResult {
              auto rng = make_rng(cfg.seed, my_stream);
              const int nblocks = is_circulant_family(fam) ? n : 2;
              std::vector<ComplexMatrix> blocks;
              blocks.reserve(nblocks);
              for (int b = 0; b < nblocks; ++b) {
                blocks.push_back(random_unit_norm_matrix(d, rng));
              }
              BoundsConfig my_bc = bc;
              my_bc.ascent.seed = cfg.seed ^ (my_stream * 0x2545F4914F6CDD1Dull);
              const StructuredSpec spec = make_spec(fam, n, blocks);
              const BoundsReport rep =
                  theorem_bounds(spec, QParameter::from_real(q), my_bc);
              TaskResult res;
              res.ref = {cfg.seed, s, q,
                         family_name(fam) + " n=" + std::to_string(n) + " d=" + std::to_string(d),
                         blocks};
              sandwich_contribs(rep, "sandwich." + family_name(fam), equality_anchor(fam),
                                cfg.sandwich_tol, res.contribs);
              return res;
            });
          }
        }
      }
    }
  }

  const int extra_seeds = std::max(1, cfg.sandwich_seeds / 8);

  // Corollary cells: n = 2 (and n = 3 for the tridiagonal layout) with the
  // closed-form blocks checked against the reduction.
  struct CorollaryCase {
    Family fam;
    int n;
    const char* anchor;
  };
  const CorollaryCase corollaries[] = {
      {Family::tridiagonal, 2, "sandwich.tridiagonal.n2"},
      {Family::tridiagonal, 3, "sandwich.tridiagonal.n3"},
      {Family::circulant, 2, "sandwich.circulant.n2"},
      {Family::skew_circulant, 2, "sandwich.skew_circulant.n2"},
      {Family::imaginary_circulant, 2, "sandwich.imaginary_circulant.n2"},
      {Family::imaginary_skew_circulant, 2, "sandwich.imaginary_skew_circulant.n2"},
  };
  for (const CorollaryCase& cc : corollaries) {
    for (int d : cfg.block_dims) {
      for (double q : cfg.q_grid) {
        for (int s = 0; s < extra_seeds; ++s) {
          const std::uint64_t my_stream = stream++;
          sb.add_task([cc, d, q, s, my_stream, &cfg, bc]() -> TaskResult {
            auto rng = make_rng(cfg.seed, my_stream);
            const int nblocks = is_circulant_family(cc.fam) ? cc.n : 2;
            std::vector<ComplexMatrix> blocks;
            for (int b = 0; b < nblocks; ++b) blocks.push_back(random_unit_norm_matrix(d, rng));
            BoundsConfig my_bc = bc;
            my_bc.ascent.seed = cfg.seed ^ (my_stream * 0x9E3779B97F4A7C15ull);
            const StructuredSpec spec = make_spec(cc.fam, cc.n, blocks);
            const BoundsReport rep = theorem_bounds(spec, QParameter::from_real(q), my_bc);

            // Closed-form blocks for the two-operator (and n = 3) cases.
            const ComplexMatrix& tm = blocks[0];
            const ComplexMatrix& sm = blocks.back();
            std::vector<ComplexMatrix> expected;
            const cplx iu(0.0, 1.0);
            const double r2 = std::sqrt(2.0);
            auto lin = [&](cplx cs) {
              ComplexMatrix m = tm;
              ComplexMatrix ss = sm;
              ss *= cs;
              m += ss;
              return m;
            };
            switch (cc.fam) {
              case Family::tridiagonal:
                if (cc.n == 2) {
                  expected = {lin(1.0), lin(-1.0)};
                } else {
                  expected = {lin(r2), lin(0.0), lin(-r2)};
                }
                break;
              case Family::circulant: expected = {lin(1.0), lin(-1.0)}; break;
              case Family::skew_circulant: expected = {lin(-iu), lin(iu)}; break;
              case Family::imaginary_circulant:
                expected = {lin((1.0 + iu) / r2), lin(-(1.0 + iu) / r2)};
                break;
              case Family::imaginary_skew_circulant:
                expected = {lin((1.0 - iu) / r2), lin(-(1.0 - iu) / r2)};
                break;
              default: break;
            }
            double block_gap = 0.0;
            const auto reduced = reduce_to_blocks(spec);
            for (size_t k = 0; k < expected.size(); ++k) {
              block_gap = std::max(block_gap, max_entry_distance(reduced[k], expected[k]));
            }

            TaskResult res;
            res.ref = {cfg.seed, s, q, std::string(cc.anchor) + " d=" + std::to_string(d), blocks};
            const double sandwich_margin =
                std::min(rep.lower_slack, rep.upper_slack) + cfg.sandwich_tol;
            const double block_margin = 1e-12 - block_gap;
            const double margin = std::min(sandwich_margin, block_margin);
            res.contribs.push_back(
                {cc.anchor, rep.lower_ok && rep.upper_ok && block_gap <= 1e-12, margin});
            return res;
          });
        }
      }
    }
  }

  // Fixed closed-form instances, one task per grid q.
  for (double q : cfg.q_grid) {
    const std::uint64_t my_stream = stream++;
    sb.add_task([q, my_stream, &cfg, bc]() -> TaskResult {
      AscentConfig base = bc.ascent;
      base.seed = cfg.seed ^ my_stream;
      const QParameter qp = QParameter::from_real(q);
      const StructuredSpec spec =
          make_spec(Family::tridiagonal, 3, {scalar_matrix(2.0), scalar_matrix(1.0)});
      const double r2p2 = 2.0 + std::sqrt(2.0);
      const double lower_exp = r2p2 * q;
      const double upper_exp = r2p2 * (q + 2.0 * std::sqrt(std::max(0.0, 1.0 - q * q)));
      return with_escalation(base, [&](const AscentConfig& ac) {
        BoundsConfig my_bc = bc;
        my_bc.ascent = ac;
        const BoundsReport rep = theorem_bounds(spec, qp, my_bc);
        TaskResult res;
        res.ref = {cfg.seed, 0, q, "tridiagonal fixed case", spec.blocks};
        const double closed_margin =
            1e-9 - std::max(std::abs(rep.lower - lower_exp), std::abs(rep.upper - upper_exp));
        const double sandwich_margin =
            std::min(rep.lower_slack, rep.upper_slack) + cfg.sandwich_tol;
        res.contribs.push_back({"sandwich.tridiagonal.fixed_case",
                                rep.lower_ok && rep.upper_ok && closed_margin >= 0.0,
                                std::min(closed_margin, sandwich_margin)});
        return res;
      });
    });

    const std::uint64_t stream2 = stream++;
    sb.add_task([q, stream2, &cfg, bc]() -> TaskResult {
      AscentConfig base = bc.ascent;
      base.seed = cfg.seed ^ stream2;
      const QParameter qp = QParameter::from_real(q);
      const StructuredSpec spec = make_spec(
          Family::circulant, 2, {scalar_matrix(1.0 / 10.0), scalar_matrix(1.0 / 24.0)});
      const double wq_exp = 1.0 / 24.0 + q / 10.0;
      const double lower_exp = (17.0 / 120.0) * q;
      return with_escalation(base, [&](const AscentConfig& ac) {
        BoundsConfig my_bc = bc;
        my_bc.ascent = ac;
        const BoundsReport rep = theorem_bounds(spec, qp, my_bc);
        TaskResult res;
        res.ref = {cfg.seed, 0, q, "circulant fixed case", spec.blocks};
        const double margin =
            std::min({cfg.tol - std::abs(rep.whole_estimate - wq_exp),
                      1e-9 - std::abs(rep.lower - lower_exp),
                      std::min(rep.lower_slack, rep.upper_slack) + cfg.sandwich_tol});
        res.contribs.push_back({"sandwich.circulant.fixed_case", margin >= 0.0, margin});
        return res;
      });
    });

    const std::uint64_t stream3 = stream++;
    sb.add_task([q, stream3, &cfg, bc]() -> TaskResult {
      AscentConfig base = bc.ascent;
      base.seed = cfg.seed ^ stream3;
      const QParameter qp = QParameter::from_real(q);
      const StructuredSpec spec =
          make_spec(Family::circulant, 2, {scalar_matrix(1.0), scalar_matrix(1.0)});
      return with_escalation(base, [&](const AscentConfig& ac) {
        BoundsConfig my_bc = bc;
        my_bc.ascent = ac;
        const BoundsReport rep = theorem_bounds(spec, qp, my_bc);
        TaskResult res;
        res.ref = {cfg.seed, 0, q, "identity-block circulant", spec.blocks};
        // w_q of the all-ones 2x2 matrix is 1 + q; the sandwich reads
        // 2q <= 1 + q <= 2(q + 2 sqrt(1 - q^2)).
        const double margin =
            std::min({cfg.tol - std::abs(rep.whole_estimate - (1.0 + q)),
                      1e-12 - std::abs(rep.lower - 2.0 * q),
                      std::min(rep.lower_slack, rep.upper_slack) + cfg.sandwich_tol});
        res.contribs.push_back({"sandwich.circulant.identity_blocks", margin >= 0.0, margin});
        return res;
      });
    });
  }

  // Repeated-block circulant: blocks {2T, 0}.
  for (int d : cfg.block_dims) {
    for (double q : cfg.q_grid) {
      for (int s = 0; s < extra_seeds; ++s) {
        const std::uint64_t my_stream = stream++;
        sb.add_task([d, q, s, my_stream, &cfg, bc]() -> TaskResult {
          auto rng = make_rng(cfg.seed, my_stream);
          const ComplexMatrix tm = random_unit_norm_matrix(d, rng);
          BoundsConfig my_bc = bc;
          my_bc.ascent.seed = cfg.seed ^ (my_stream * 0x1234567ull);
          const QParameter qp = QParameter::from_real(q);
          const StructuredSpec spec = make_spec(Family::circulant, 2, {tm, tm});
          const BoundsReport rep = theorem_bounds(spec, qp, my_bc);
          const double twice = 2.0 * block_radius(tm, qp, my_bc.ascent);
          TaskResult res;
          res.ref = {cfg.seed, s, q, "repeated block d=" + std::to_string(d), {tm}};
          const double margin =
              std::min(cfg.tol - std::abs(rep.lower - twice),
                       std::min(rep.lower_slack, rep.upper_slack) + cfg.sandwich_tol);
          res.contribs.push_back({"sandwich.circulant.repeated_block", margin >= 0.0, margin});
          return res;
        });
      }
    }
  }

  // Tridiagonal special cases with closed-form coefficients.
  for (Family fam : {Family::tridiagonal, Family::anti_tridiagonal}) {
    for (SpecialCase tag : {SpecialCase::T_zero, SpecialCase::S_zero, SpecialCase::T_equals_S,
                            SpecialCase::S_equals_iT}) {
      for (int n : cfg.n_values) {
        for (int d : cfg.block_dims) {
          for (double q : cfg.q_grid) {
            for (int s = 0; s < extra_seeds; ++s) {
              const std::uint64_t my_stream = stream++;
              sb.add_task([fam, tag, n, d, q, s, my_stream, &cfg, bc]() -> TaskResult {
                auto rng = make_rng(cfg.seed, my_stream);
                const ComplexMatrix base = random_unit_norm_matrix(d, rng);
                BoundsConfig my_bc = bc;
                my_bc.ascent.seed = cfg.seed ^ (my_stream * 0xABCDEFull);
                const QParameter qp = QParameter::from_real(q);
                const BoundsReport rep = special_case_bounds(tag, base, n, qp, my_bc, fam);
                const double wbase = block_radius(base, qp, my_bc.ascent);
                double coeff_gap = 0.0;
                for (int k = 0; k < n; ++k) {
                  coeff_gap = std::max(
                      coeff_gap, std::abs(rep.block_radii[k] - rep.coefficients[k] * wbase));
                }
                TaskResult res;
                res.ref = {cfg.seed, s, q,
                           family_name(fam) + " " + special_case_name(tag) + " n=" +
                               std::to_string(n) + " d=" + std::to_string(d),
                           {base}};
                const double margin =
                    std::min(cfg.tol - coeff_gap,
                             std::min(rep.lower_slack, rep.upper_slack) + cfg.sandwich_tol);
                res.contribs.push_back({"special." + family_name(fam) + "." +
                                            special_case_name(tag),
                                        margin >= 0.0, margin});
                return res;
              });
            }
          }
        }
      }
    }
  }

  // Direct sums.
  for (int d : cfg.block_dims) {
    for (double q : cfg.q_grid) {
      for (int s = 0; s < extra_seeds; ++s) {
        const std::uint64_t my_stream = stream++;
        sb.add_task([d, q, s, my_stream, &cfg, bc]() -> TaskResult {
          auto rng = make_rng(cfg.seed, my_stream);
          BoundsConfig my_bc = bc;
          my_bc.ascent.seed = cfg.seed ^ (my_stream * 0xFEDCBAull);
          const QParameter qp = QParameter::from_real(q);
          std::vector<ComplexMatrix> pair = {random_unit_norm_matrix(d, rng),
                                             random_unit_norm_matrix(d, rng)};
          const BoundsReport rp = direct_sum_bounds(pair, qp, my_bc);
          std::uniform_int_distribution<int> len_dist(3, 4);
          std::vector<ComplexMatrix> list = pair;
          const int len = len_dist(rng);
          while (static_cast<int>(list.size()) < len) {
            list.push_back(random_unit_norm_matrix(d, rng));
          }
          const BoundsReport rl = direct_sum_bounds(list, qp, my_bc);
          TaskResult res;
          res.ref = {cfg.seed, s, q, "direct sum d=" + std::to_string(d), list};
          res.contribs.push_back({"direct_sum.pair", rp.lower_ok && rp.upper_ok,
                                  std::min(rp.lower_slack, rp.upper_slack) + cfg.sandwich_tol});
          res.contribs.push_back({"direct_sum.finite", rl.lower_ok && rl.upper_ok,
                                  std::min(rl.lower_slack, rl.upper_slack) + cfg.sandwich_tol});
          return res;
        });
      }
    }
  }

  return sb.run();
}

SuiteReport run_classical_limit_suite(const SuiteConfig& cfg) {
  SuiteBuilder sb("classical", cfg);
  sb.declare("classical.norm_sandwich", "half the norm bounds the radius from below at q = 1");
  sb.declare("classical.power", "radius of a power is at most the power of the radius");
  sb.declare("classical.nilpotent_half", "square-zero operators attain half the norm");
  sb.declare("classical.normal_equality", "normal operators attain the norm");
  sb.declare("classical.nilpotent_cosine", "nilpotent shift blocks attain the cosine bound");

  const QParameter q1 = QParameter::from_real(1.0);

  for (int t = 0; t < cfg.trials; ++t) {
    sb.add_task([t, &cfg, q1]() -> TaskResult {
      auto rng = make_rng(cfg.seed, 0xC1A50000ull + static_cast<std::uint64_t>(t));
      const int dim = pick_dim(cfg, t);
      AscentConfig base = cfg.ascent;
      base.seed = cfg.seed + 53 * static_cast<std::uint64_t>(t);

      const ComplexMatrix s = random_unit_norm_matrix(dim, rng);
      const ComplexMatrix s2 = matmul(s, s);
      const ComplexMatrix s3 = matmul(s2, s);

      // Rank-one square-zero operator u v^H with v orthogonal to u.
      const int nd = std::max(dim, 2);
      Vec uvec = random_unit_vector(nd, rng);
      Vec vvec = random_gaussian_vector(nd, rng);
      const cplx proj = inner(vvec, uvec);
      for (int i = 0; i < nd; ++i) vvec[i] -= proj * uvec[i];
      const double vn = norm(vvec);
      for (cplx& c : vvec) c /= vn;
      ComplexMatrix nil(nd);
      for (int i = 0; i < nd; ++i)
        for (int j = 0; j < nd; ++j) nil.at(i, j) = uvec[i] * std::conj(vvec[j]);

      // Normal operator with known radius max |lambda|.
      const ComplexMatrix un = random_unitary(dim, rng);
      std::normal_distribution<double> gauss(0.0, 1.0);
      ComplexMatrix diag(dim);
      double maxabs = 0.0;
      for (int i = 0; i < dim; ++i) {
        const cplx lam(gauss(rng), gauss(rng));
        diag.at(i, i) = lam;
        maxabs = std::max(maxabs, std::abs(lam));
      }
      const ComplexMatrix normal = matmul(matmul(un, diag), adjoint(un));
      const double nrm = operator_norm(s);

      return with_escalation(base, [&](const AscentConfig& ac) {
        const double w = estimate_radius(s, q1, ac).value;
        const double w2 = estimate_radius(s2, q1, ac).value;
        const double w3 = estimate_radius(s3, q1, ac).value;
        const double wnil = estimate_radius(nil, q1, ac).value;
        const double wnormal = estimate_radius(normal, q1, ac).value;

        TaskResult res;
        res.ref = {cfg.seed, t, 1.0, "dim=" + std::to_string(dim), {s}};
        const double lower_margin = w - 0.5 * nrm + cfg.tol;
        const double upper_margin = nrm + cfg.tol - w;
        res.contribs = {
            {"classical.norm_sandwich", lower_margin >= 0.0 && upper_margin >= 0.0,
             std::min(lower_margin, upper_margin)},
            {"classical.power",
             w2 <= w * w + cfg.tol && w3 <= w * w * w + cfg.tol,
             std::min(w * w + cfg.tol - w2, w * w * w + cfg.tol - w3)},
            equality_check("classical.nilpotent_half", wnil, 0.5, cfg.tol),
            equality_check("classical.normal_equality", wnormal, maxabs, cfg.tol),
        };
        return res;
      });
    });
  }

  // Jordan blocks J_n, n = 2..6: the radius equals cos(pi/(n+1)).
  for (int n = 2; n <= 6; ++n) {
    sb.add_task([n, &cfg, q1]() -> TaskResult {
      AscentConfig base = cfg.ascent;
      base.seed = cfg.seed + 1000 + static_cast<std::uint64_t>(n);
      ComplexMatrix j(n);
      for (int i = 0; i + 1 < n; ++i) j.at(i, i + 1) = 1.0;
      const double target = std::cos(M_PI / (n + 1));
      return with_escalation(base, [&](const AscentConfig& ac) {
        const double w = estimate_radius(j, q1, ac).value;
        TaskResult res;
        res.ref = {cfg.seed, n, 1.0, "jordan n=" + std::to_string(n), {j}};
        const double margin = std::min(target + 1e-6 - w, w - (target - 1e-4));
        res.contribs.push_back({"classical.nilpotent_cosine", margin >= 0.0, margin});
        return res;
      });
    });
  }
  return sb.run();
}

SuiteReport run_reduction_suite(const SuiteConfig& cfg) {
  SuiteBuilder sb("reduction", cfg);
  for (Family f : all_families()) {
    sb.declare("reduction." + family_name(f) + ".unitary",
               "reducing unitary of the " + family_name(f) + " layout is unitary");
    sb.declare("reduction." + family_name(f) + ".blocks",
               "conjugation lands on the closed-form blocks for " + family_name(f));
  }
  sb.declare("reduction.tridiagonal.two_block_exact",
             "n = 2 sine transform is the exact Hadamard-type reduction");

  std::uint64_t stream = 0x4ED00000ull;
  for (Family fam : all_families()) {
    for (int n : cfg.reduction_n) {
      for (int d : cfg.reduction_dims) {
        for (int inst = 0; inst < cfg.reduction_instances; ++inst) {
          const std::uint64_t my_stream = stream++;
          sb.add_task([fam, n, d, inst, my_stream, &cfg]() -> TaskResult {
            auto rng = make_rng(cfg.seed, my_stream);
            const int nblocks = is_circulant_family(fam) ? n : 2;
            std::vector<ComplexMatrix> blocks;
            for (int b = 0; b < nblocks; ++b) {
              // Instance 0 uses identity blocks; the closed forms then hold
              // with no randomness in play.
              blocks.push_back(inst == 0 ? ComplexMatrix::identity(d)
                                         : random_unit_norm_matrix(d, rng));
            }
            const StructuredSpec spec = make_spec(fam, n, blocks);
            const BlockDiagonalization bd = block_diagonalize(spec);
            const double defect =
                unitarity_defect(reducing_unitary(fam, n, d));
            TaskResult res;
            res.ref = {cfg.seed, inst, 0.0,
                       family_name(fam) + " n=" + std::to_string(n) + " d=" + std::to_string(d),
                       blocks};
            res.contribs = {
                {"reduction." + family_name(fam) + ".unitary", defect < 1e-10, 1e-10 - defect},
                {"reduction." + family_name(fam) + ".blocks", bd.residual < 1e-9,
                 1e-9 - bd.residual},
            };
            return res;
          });
        }
      }
    }
  }

  sb.add_task([&cfg]() -> TaskResult {
    auto rng = make_rng(cfg.seed, 0x4EDFFFFFull);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const StructuredSpec spec = make_spec(
        Family::tridiagonal, 2, {scalar_matrix(gauss(rng)), scalar_matrix(gauss(rng))});
    const BlockDiagonalization bd = block_diagonalize(spec);
    TaskResult res;
    res.ref = {cfg.seed, 0, 0.0, "tridiagonal n=2 d=1", spec.blocks};
    res.contribs.push_back(
        {"reduction.tridiagonal.two_block_exact", bd.residual < 1e-14, 1e-14 - bd.residual});
    return res;
  });

  return sb.run();
}

std::vector<SuiteReport> run_all_suites(const SuiteConfig& cfg) {
  std::vector<SuiteReport> reports;
  reports.push_back(run_axiom_suite(cfg));
  reports.push_back(run_block_lemma_suite(cfg));
  reports.push_back(run_sandwich_suite(cfg));
  reports.push_back(run_classical_limit_suite(cfg));
  reports.push_back(run_reduction_suite(cfg));
  return reports;
}

std::vector<std::string> coverage_manifest(const std::vector<SuiteReport>& reports) {
  std::set<std::string> anchors;
  for (const SuiteReport& rep : reports) {
    for (const PropertyRecord& rec : rep.records) anchors.insert(rec.anchor);
  }
  return {anchors.begin(), anchors.end()};
}

}  // namespace qnr
