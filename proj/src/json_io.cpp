#include "qnr/json_io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace qnr {

namespace {

double finite_number(const ordered_json& j, const char* what) {
  if (!j.is_number()) throw std::invalid_argument(std::string("expected a number for ") + what);
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw std::invalid_argument(std::string("non-finite value for ") + what);
  return v;
}

ordered_json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  ordered_json j;
  in >> j;
  return j;
}

}  // namespace

ordered_json matrix_to_json(const ComplexMatrix& m) {
  ordered_json j;
  j["dim"] = m.dim();
  ordered_json entries = ordered_json::array();
  for (const cplx& c : m.entries()) entries.push_back({c.real(), c.imag()});
  j["entries"] = std::move(entries);
  return j;
}

ComplexMatrix matrix_from_json(const ordered_json& j) {
  if (!j.is_object() || !j.contains("dim") || !j.contains("entries")) {
    throw std::invalid_argument("matrix json needs {\"dim\", \"entries\"}");
  }
  const int dim = j.at("dim").get<int>();
  const auto& entries = j.at("entries");
  if (!entries.is_array()) throw std::invalid_argument("matrix entries must be an array");
  Vec v;
  v.reserve(entries.size());
  for (const auto& e : entries) {
    if (!e.is_array() || e.size() != 2) {
      throw std::invalid_argument("matrix entry must be [re, im]");
    }
    v.emplace_back(finite_number(e[0], "entry"), finite_number(e[1], "entry"));
  }
  return ComplexMatrix::from_entries(dim, std::move(v));
}

ComplexMatrix load_matrix(const std::string& path) {
  return matrix_from_json(read_json_file(path));
}

ordered_json spec_to_json(const StructuredSpec& spec) {
  ordered_json j;
  j["family"] = family_name(spec.family);
  j["n"] = spec.n;
  ordered_json blocks = ordered_json::array();
  for (const ComplexMatrix& b : spec.blocks) blocks.push_back(matrix_to_json(b));
  j["blocks"] = std::move(blocks);
  return j;
}

StructuredSpec spec_from_json(const ordered_json& j) {
  StructuredSpec spec;
  spec.family = family_from_name(j.at("family").get<std::string>());
  spec.n = j.at("n").get<int>();
  for (const auto& b : j.at("blocks")) spec.blocks.push_back(matrix_from_json(b));
  spec.validate();
  return spec;
}

StructuredSpec load_spec(const std::string& path) {
  return spec_from_json(read_json_file(path));
}

namespace {

ordered_json vector_to_json(const Vec& v) {
  ordered_json arr = ordered_json::array();
  for (const cplx& c : v) arr.push_back({c.real(), c.imag()});
  return arr;
}

ordered_json ascent_to_json(const AscentConfig& cfg) {
  ordered_json j;
  j["restarts"] = cfg.restarts;
  j["max_iters"] = cfg.max_iters;
  j["tol"] = cfg.tol;
  j["seed"] = cfg.seed;
  return j;
}

}  // namespace

ordered_json estimate_to_json(const RadiusEstimate& est, const ComplexMatrix& a,
                              const QParameter& qp) {
  ordered_json j;
  j["value"] = est.value;
  j["q"] = {qp.q().real(), qp.q().imag()};
  j["q_modulus"] = qp.modulus();
  j["witness_x"] = vector_to_json(est.witness_x.components());
  j["witness_y"] = vector_to_json(est.witness_y.components());
  const cplx constraint = inner(est.witness_x.components(), est.witness_y.components());
  j["constraint_residual"] = std::abs(constraint - qp.q());
  j["witness_value_residual"] = std::abs(
      std::abs(inner(mat_apply(a, est.witness_x), est.witness_y.components())) - est.value);
  j["restarts_used"] = est.restarts_used;
  j["converged"] = est.converged;
  j["max_gap"] = est.max_gap;
  return j;
}

ordered_json bounds_to_json(const BoundsReport& rep) {
  ordered_json j;
  j["family"] = rep.family_label;
  j["n"] = rep.n;
  j["q"] = {rep.q.real(), rep.q.imag()};
  j["k_factor"] = rep.k_factor;
  j["block_labels"] = rep.block_labels;
  j["block_radii"] = rep.block_radii;
  j["lower"] = rep.lower;
  j["upper"] = rep.upper;
  j["whole_estimate"] = rep.whole_estimate;
  ordered_json verdict;
  verdict["lower_ok"] = rep.lower_ok;
  verdict["upper_ok"] = rep.upper_ok;
  verdict["lower_slack"] = rep.lower_slack;
  verdict["upper_slack"] = rep.upper_slack;
  verdict["tolerance"] = rep.verdict_tol;
  verdict["escalated"] = rep.escalated;
  j["verdict"] = std::move(verdict);
  if (!rep.coefficients.empty()) j["coefficients"] = rep.coefficients;
  if (!rep.note.empty()) j["note"] = rep.note;
  j["cfg"] = ascent_to_json(rep.cfg);
  return j;
}

namespace {

ordered_json trial_ref_to_json(const TrialRef& ref) {
  ordered_json j;
  j["seed"] = ref.seed;
  j["index"] = ref.index;
  j["q"] = ref.q;
  j["context"] = ref.context;
  ordered_json mats = ordered_json::array();
  for (const ComplexMatrix& m : ref.matrices) mats.push_back(matrix_to_json(m));
  j["matrices"] = std::move(mats);
  return j;
}

}  // namespace

ordered_json suite_to_json(const SuiteReport& rep) {
  ordered_json j;
  j["suite"] = rep.suite;
  j["seed"] = rep.seed;
  j["overall_pass"] = rep.overall_pass();
  j["total_failures"] = rep.total_failures();
  ordered_json records = ordered_json::array();
  for (const PropertyRecord& rec : rep.records) {
    ordered_json r;
    r["anchor"] = rec.anchor;
    r["title"] = rec.title;
    r["trials"] = rec.trials;
    r["failures"] = rec.failures;
    r["worst_slack"] = std::isfinite(rec.worst_slack) ? rec.worst_slack : 0.0;
    r["worst_case"] = trial_ref_to_json(rec.worst);
    ordered_json fails = ordered_json::array();
    for (const TrialRef& f : rec.failure_samples) fails.push_back(trial_ref_to_json(f));
    r["failure_samples"] = std::move(fails);
    records.push_back(std::move(r));
  }
  j["records"] = std::move(records);
  return j;
}

ordered_json suites_to_json(const std::vector<SuiteReport>& reps,
                            const std::vector<std::string>& manifest) {
  ordered_json j;
  bool all = true;
  int failures = 0;
  for (const SuiteReport& r : reps) {
    all = all && r.overall_pass();
    failures += r.total_failures();
  }
  j["overall_pass"] = all;
  j["total_failures"] = failures;
  j["coverage_manifest"] = manifest;
  ordered_json suites = ordered_json::array();
  for (const SuiteReport& r : reps) suites.push_back(suite_to_json(r));
  j["suites"] = std::move(suites);
  return j;
}

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

void atomic_write_file(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    out << content;
    if (!out.good()) throw std::runtime_error("write failed for " + tmp.string());
  }
  fs::rename(tmp, target);
}

std::string boundary_csv(const BoundaryTrace& trace) {
  std::ostringstream out;
  out << "theta,support,re,im\n";
  for (size_t k = 0; k < trace.thetas.size(); ++k) {
    out << format_double(trace.thetas[k]) << ',' << format_double(trace.support_values[k])
        << ',' << format_double(trace.points[k].real()) << ','
        << format_double(trace.points[k].imag()) << '\n';
  }
  return out.str();
}

std::string boundary_svg(const BoundaryTrace& trace) {
  constexpr double kView = 800.0;
  constexpr double kMargin = 60.0;
  double lo_x = 0.0, hi_x = 0.0, lo_y = 0.0, hi_y = 0.0;
  for (const cplx& z : trace.points) {
    lo_x = std::min(lo_x, z.real());
    hi_x = std::max(hi_x, z.real());
    lo_y = std::min(lo_y, z.imag());
    hi_y = std::max(hi_y, z.imag());
  }
  const double span = std::max({hi_x - lo_x, hi_y - lo_y, 1e-9});
  const double cx = 0.5 * (lo_x + hi_x);
  const double cy = 0.5 * (lo_y + hi_y);
  const double scale = (kView - 2.0 * kMargin) / span;  // equal aspect
  auto px = [&](double x) { return kView / 2.0 + (x - cx) * scale; };
  auto py = [&](double y) { return kView / 2.0 - (y - cy) * scale; };

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"800\" "
         "viewBox=\"0 0 800 800\">\n"
      << "<rect width=\"800\" height=\"800\" fill=\"white\"/>\n";
  // Axes through the origin when visible, with tick marks.
  svg << "<line x1=\"" << px(cx - span) << "\" y1=\"" << py(0.0) << "\" x2=\"" << px(cx + span)
      << "\" y2=\"" << py(0.0) << "\" stroke=\"#bbbbbb\"/>\n";
  svg << "<line x1=\"" << px(0.0) << "\" y1=\"" << py(cy - span) << "\" x2=\"" << px(0.0)
      << "\" y2=\"" << py(cy + span) << "\" stroke=\"#bbbbbb\"/>\n";
  const double tick = span / 4.0;
  for (int k = -4; k <= 4; ++k) {
    const double xv = cx + k * tick;
    const double yv = cy + k * tick;
    svg << "<line x1=\"" << px(xv) << "\" y1=\"" << py(0.0) - 4 << "\" x2=\"" << px(xv)
        << "\" y2=\"" << py(0.0) + 4 << "\" stroke=\"#888888\"/>\n";
    svg << "<line x1=\"" << px(0.0) - 4 << "\" y1=\"" << py(yv) << "\" x2=\"" << px(0.0) + 4
        << "\" y2=\"" << py(yv) << "\" stroke=\"#888888\"/>\n";
    svg << "<text x=\"" << px(xv) << "\" y=\"" << py(0.0) + 18
        << "\" font-size=\"11\" text-anchor=\"middle\">" << format_double(xv) << "</text>\n";
  }
  svg << "<polyline fill=\"none\" stroke=\"#1f6fb2\" stroke-width=\"1.5\" points=\"";
  for (size_t k = 0; k <= trace.points.size(); ++k) {
    const cplx& z = trace.points[k % trace.points.size()];
    svg << px(z.real()) << ',' << py(z.imag()) << ' ';
  }
  svg << "\"/>\n</svg>\n";
  return svg.str();
}

}  // namespace qnr
