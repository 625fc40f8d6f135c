#include <CLI11.hpp>
#include <cmath>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "qnr/boundary.hpp"
#include "qnr/bounds.hpp"
#include "qnr/ellipse.hpp"
#include "qnr/json_io.hpp"
#include "qnr/parallel.hpp"
#include "qnr/verify.hpp"

namespace {

using namespace qnr;

constexpr int kExitPropertyFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitMathInvalid = 3;

// Accepts a decimal ("0.5") or a complex "re,im" pair; complex q is reduced
// to its modulus downstream, so record both in output metadata.
QParameter parse_q(const std::string& text) {
  const auto comma = text.find(',');
  double re = 0.0, im = 0.0;
  if (comma == std::string::npos) {
    re = std::stod(text);
  } else {
    re = std::stod(text.substr(0, comma));
    im = std::stod(text.substr(comma + 1));
  }
  return QParameter::from({re, im});
}

std::vector<double> parse_grid(const std::string& text) {
  double a = 0.0, b = 0.0, step = 0.0;
  char c1 = 0, c2 = 0;
  std::istringstream in(text);
  in >> a >> c1 >> b >> c2 >> step;
  if (!in || c1 != ':' || c2 != ':' || step <= 0.0 || a <= 0.0 || b > 1.0 + 1e-12 || a > b) {
    throw std::invalid_argument("grid must be a:b:step within (0, 1]");
  }
  std::vector<double> g;
  const int count = static_cast<int>(std::floor((b - a) / step + 1e-9)) + 1;
  for (int i = 0; i < count; ++i) g.push_back(std::min(a + i * step, 1.0));
  return g;
}

int cmd_radius(const std::string& path, const std::string& q_text, int restarts, double tol,
               std::uint64_t seed, bool as_json) {
  const ComplexMatrix a = load_matrix(path);
  const QParameter qp = parse_q(q_text);
  AscentConfig cfg;
  cfg.restarts = restarts;
  cfg.tol = tol;
  cfg.seed = seed;
  const RadiusEstimate est = estimate_radius(a, qp, cfg);
  if (as_json) {
    std::cout << estimate_to_json(est, a, qp).dump(2) << "\n";
    return 0;
  }
  const cplx constraint = inner(est.witness_x.components(), est.witness_y.components());
  std::cout << "value " << format_double(est.value) << "\n"
            << "q_modulus " << format_double(qp.modulus()) << "\n"
            << "constraint_residual " << format_double(std::abs(constraint - qp.q())) << "\n"
            << "restarts_used " << est.restarts_used << "\n"
            << "converged " << (est.converged ? "yes" : "no") << "\n"
            << "max_gap " << format_double(est.max_gap) << "\n";
  return 0;
}

int cmd_range(const std::string& path, const std::string& q_text, int thetas,
              const std::string& out_csv, const std::string& svg_path, int restarts,
              std::uint64_t seed) {
  const ComplexMatrix a = load_matrix(path);
  const QParameter qp_in = parse_q(q_text);
  // Complex q is reduced to its modulus up front; the traced set for q with
  // a phase is the reduced one rotated by that phase.
  const QParameter qp = QParameter::from_real(qp_in.modulus());
  AscentConfig cfg;
  cfg.restarts = restarts;
  cfg.seed = seed;
  const BoundaryTrace trace = trace_boundary(a, qp, thetas, cfg);
  atomic_write_file(out_csv, boundary_csv(trace));
  if (!svg_path.empty()) atomic_write_file(svg_path, boundary_svg(trace));
  if (qp_in.q().imag() != 0.0 || qp_in.q().real() < 0.0) {
    std::cout << "q reduced to modulus " << format_double(qp.modulus()) << "\n";
  }
  std::cout << "wrote " << out_csv << " (" << thetas << " angles)\n";
  return 0;
}

int cmd_build(const std::string& spec_path, const std::string& family, int n,
              const std::vector<std::string>& block_paths, const std::string& out,
              const std::string& blocks_prefix, const std::string& unitary_path) {
  StructuredSpec spec;
  if (!spec_path.empty()) {
    spec = load_spec(spec_path);
  } else {
    spec.family = family_from_name(family);
    spec.n = n;
    for (const std::string& p : block_paths) spec.blocks.push_back(load_matrix(p));
    spec.validate();
  }
  atomic_write_file(out, matrix_to_json(build_structured(spec)).dump(2) + "\n");
  std::cout << "wrote " << out << "\n";
  if (!blocks_prefix.empty()) {
    const auto blocks = reduce_to_blocks(spec);
    const auto labels = block_labels(spec.family, spec.n);
    for (size_t k = 0; k < blocks.size(); ++k) {
      const std::string p = blocks_prefix + "_k" + std::to_string(labels[k]) + ".json";
      atomic_write_file(p, matrix_to_json(blocks[k]).dump(2) + "\n");
      std::cout << "wrote " << p << "\n";
    }
  }
  if (!unitary_path.empty()) {
    const BlockDiagonalization bd = block_diagonalize(spec);
    atomic_write_file(unitary_path, matrix_to_json(bd.unitary).dump(2) + "\n");
    std::cout << "wrote " << unitary_path << " (residual " << format_double(bd.residual)
              << ")\n";
  }
  return 0;
}

int cmd_bounds(const std::string& family, int n, const std::string& q_text,
               const std::vector<std::string>& block_paths, bool as_json, int restarts,
               double tol, std::uint64_t seed) {
  const QParameter qp = parse_q(q_text);
  BoundsConfig cfg;
  cfg.ascent.restarts = restarts;
  cfg.ascent.tol = tol;
  cfg.ascent.seed = seed;
  std::vector<ComplexMatrix> blocks;
  for (const std::string& p : block_paths) blocks.push_back(load_matrix(p));

  BoundsReport rep = [&]() {
    if (family == "direct_sum") {
      return direct_sum_bounds(blocks, qp, cfg);
    }
    StructuredSpec spec;
    spec.family = family_from_name(family);
    spec.n = n;
    spec.blocks = std::move(blocks);
    spec.validate();
    return theorem_bounds(spec, qp, cfg);
  }();

  if (as_json) {
    std::cout << bounds_to_json(rep).dump(2) << "\n";
  } else {
    std::cout << "family " << rep.family_label << " n=" << rep.n << " q="
              << format_double(std::abs(rep.q)) << "\n"
              << "k_factor " << format_double(rep.k_factor) << "\n";
    for (size_t k = 0; k < rep.block_radii.size(); ++k) {
      std::cout << "block k=" << rep.block_labels[k] << " radius "
                << format_double(rep.block_radii[k]) << "\n";
    }
    std::cout << "lower " << format_double(rep.lower) << "\n"
              << "upper " << format_double(rep.upper) << "\n"
              << "whole_estimate " << format_double(rep.whole_estimate) << "\n"
              << "lower_ok " << (rep.lower_ok ? "yes" : "no") << " (slack "
              << format_double(rep.lower_slack) << ")\n"
              << "upper_ok " << (rep.upper_ok ? "yes" : "no") << " (slack "
              << format_double(rep.upper_slack) << ")\n";
  }
  return rep.lower_ok && rep.upper_ok ? 0 : kExitPropertyFailure;
}

int cmd_verify(const std::string& suite, std::uint64_t seed, int trials,
               const std::string& report_path) {
  SuiteConfig cfg;
  cfg.seed = seed;
  if (trials > 0) {
    cfg.trials = trials;
    cfg.sandwich_seeds = trials;
    cfg.reduction_instances = std::min(trials, 5);
  }

  std::vector<SuiteReport> reports;
  if (suite == "all") {
    reports = run_all_suites(cfg);
  } else if (suite == "axioms") {
    reports.push_back(run_axiom_suite(cfg));
  } else if (suite == "blocks") {
    reports.push_back(run_block_lemma_suite(cfg));
  } else if (suite == "sandwich") {
    reports.push_back(run_sandwich_suite(cfg));
  } else if (suite == "classical") {
    reports.push_back(run_classical_limit_suite(cfg));
  } else if (suite == "reduction") {
    reports.push_back(run_reduction_suite(cfg));
  } else {
    throw std::invalid_argument("unknown suite: " + suite);
  }

  int failures = 0;
  for (const SuiteReport& rep : reports) {
    for (const PropertyRecord& rec : rep.records) {
      std::cout << rep.suite << " " << rec.anchor << " trials=" << rec.trials
                << " failures=" << rec.failures << " worst_slack="
                << format_double(std::isfinite(rec.worst_slack) ? rec.worst_slack : 0.0)
                << "\n";
    }
    failures += rep.total_failures();
  }
  if (!report_path.empty()) {
    atomic_write_file(report_path,
                      suites_to_json(reports, coverage_manifest(reports)).dump(2) + "\n");
  }
  std::cout << (failures == 0 ? "PASS" : "FAIL") << " total_failures=" << failures << "\n";
  return failures == 0 ? 0 : kExitPropertyFailure;
}

int cmd_reproduce(const std::string& example, const std::string& grid_text,
                  const std::string& prefix, std::uint64_t seed) {
  StructuredSpec spec;
  auto scalar = [](double v) {
    ComplexMatrix m(1);
    m.at(0, 0) = v;
    return m;
  };
  if (example == "ex0") {
    spec = StructuredSpec{Family::tridiagonal, 3, {scalar(2.0), scalar(1.0)}};
  } else if (example == "ex1") {
    spec = StructuredSpec{Family::circulant, 2, {scalar(0.1), scalar(1.0 / 24.0)}};
  } else if (example == "ex2") {
    spec = StructuredSpec{Family::circulant, 2, {scalar(1.0), scalar(1.0)}};
  } else {
    throw std::invalid_argument("unknown example: " + example);
  }
  const std::vector<double> grid = parse_grid(grid_text);

  BoundsConfig bcfg;
  bcfg.ascent.restarts = 32;
  bcfg.ascent.seed = seed;

  std::vector<BoundsReport> rows(grid.size(),
                                 BoundsReport{});  // filled in parallel below
  parallel_for(grid.size(), [&](std::size_t i) {
    BoundsConfig c = bcfg;
    c.ascent.seed = seed + i;
    rows[i] = theorem_bounds(spec, QParameter::from_real(grid[i]), c);
  });

  std::ostringstream csv;
  csv << "q,lower,wq,upper\n";
  for (size_t i = 0; i < grid.size(); ++i) {
    csv << format_double(grid[i]) << ',' << format_double(rows[i].lower) << ','
        << format_double(rows[i].whole_estimate) << ',' << format_double(rows[i].upper)
        << '\n';
  }
  atomic_write_file(prefix + ".csv", csv.str());
  std::cout << "wrote " << prefix << ".csv (" << grid.size() << " rows)\n";

  // Range boundary at q = 0.5 alongside the bound comparison.
  AscentConfig acfg;
  acfg.restarts = 32;
  acfg.seed = seed;
  const ComplexMatrix whole = build_structured(spec);
  const BoundaryTrace trace = trace_boundary(whole, QParameter::from_real(0.5), 512, acfg);
  atomic_write_file(prefix + "_boundary.csv", boundary_csv(trace));
  atomic_write_file(prefix + "_boundary.svg", boundary_svg(trace));
  std::cout << "wrote " << prefix << "_boundary.csv and .svg (q = 0.5)\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"q-numerical radius and range toolkit"};
  app.require_subcommand(1);

  // radius
  auto* radius = app.add_subcommand("radius", "estimate the q-numerical radius of a matrix");
  std::string r_path, r_q = "1";
  int r_restarts = 64;
  double r_tol = 1e-10;
  std::uint64_t r_seed = 0;
  bool r_json = false;
  radius->add_option("matrix", r_path, "matrix json file")->required();
  radius->add_option("--q", r_q, "q value: decimal or re,im")->required();
  radius->add_option("--restarts", r_restarts, "ascent restarts");
  radius->add_option("--tol", r_tol, "ascent tolerance");
  radius->add_option("--seed", r_seed, "rng seed");
  radius->add_flag("--json", r_json, "emit the full estimate as json");

  // range
  auto* range = app.add_subcommand("range", "trace the boundary of the q-numerical range");
  std::string g_path, g_q = "0.5", g_out, g_svg;
  int g_thetas = 360, g_restarts = 48;
  std::uint64_t g_seed = 0;
  range->add_option("matrix", g_path, "matrix json file")->required();
  range->add_option("--q", g_q, "q value: decimal or re,im")->required();
  range->add_option("--thetas", g_thetas, "number of support angles (>= 8)");
  range->add_option("--out", g_out, "output csv path")->required();
  range->add_option("--svg", g_svg, "optional svg path");
  range->add_option("--restarts", g_restarts, "ascent restarts per angle");
  range->add_option("--seed", g_seed, "rng seed");

  // build
  auto* build = app.add_subcommand("build", "assemble a structured operator matrix");
  std::string b_spec, b_family = "tridiagonal", b_out, b_blocks, b_unitary;
  int b_n = 2;
  std::vector<std::string> b_block_paths;
  build->add_option("--spec", b_spec, "structured spec json file");
  build->add_option("--family", b_family, "family name");
  build->add_option("--n", b_n, "block count");
  build->add_option("blocks", b_block_paths, "block matrix json files");
  build->add_option("--out", b_out, "output matrix json path")->required();
  build->add_option("--reduced-blocks", b_blocks, "prefix for the reduced block files");
  build->add_option("--unitary", b_unitary, "path for the reducing unitary");

  // bounds
  auto* bounds = app.add_subcommand("bounds", "evaluate the two-sided radius bounds");
  std::string d_family, d_q;
  int d_n = 2, d_restarts = 64;
  double d_tol = 1e-10;
  std::uint64_t d_seed = 0;
  bool d_json = false;
  std::vector<std::string> d_blocks;
  bounds->add_option("--family", d_family, "family name or direct_sum")->required();
  bounds->add_option("--n", d_n, "block count");
  bounds->add_option("--q", d_q, "q value: decimal or re,im")->required();
  bounds->add_option("blocks", d_blocks, "block matrix json files")->required();
  bounds->add_flag("--json", d_json, "emit the report as json");
  bounds->add_option("--restarts", d_restarts, "ascent restarts");
  bounds->add_option("--tol", d_tol, "ascent tolerance");
  bounds->add_option("--seed", d_seed, "rng seed");

  // verify
  auto* verify = app.add_subcommand("verify", "run the property suites");
  std::string v_suite = "all", v_report;
  std::uint64_t v_seed = 42;
  int v_trials = 0;
  verify->add_option("--suite", v_suite, "axioms|blocks|sandwich|classical|reduction|all");
  verify->add_option("--seed", v_seed, "suite seed");
  verify->add_option("--trials", v_trials, "override per-property trial counts");
  verify->add_option("--report", v_report, "write the suite report json here");

  // reproduce
  auto* repro = app.add_subcommand("reproduce", "regenerate the worked examples");
  std::string p_example, p_grid = "0.02:1:0.02", p_prefix = "reproduce";
  std::uint64_t p_seed = 0;
  repro->add_option("--example", p_example, "ex0|ex1|ex2")->required();
  repro->add_option("--q-grid", p_grid, "a:b:step within (0, 1]");
  repro->add_option("--out", p_prefix, "output file prefix");
  repro->add_option("--seed", p_seed, "rng seed");

  try {
    app.parse(argc, argv);
    if (radius->parsed()) return cmd_radius(r_path, r_q, r_restarts, r_tol, r_seed, r_json);
    if (range->parsed())
      return cmd_range(g_path, g_q, g_thetas, g_out, g_svg, g_restarts, g_seed);
    if (build->parsed())
      return cmd_build(b_spec, b_family, b_n, b_block_paths, b_out, b_blocks, b_unitary);
    if (bounds->parsed())
      return cmd_bounds(d_family, d_n, d_q, d_blocks, d_json, d_restarts, d_tol, d_seed);
    if (verify->parsed()) return cmd_verify(v_suite, v_seed, v_trials, v_report);
    if (repro->parsed()) return cmd_reproduce(p_example, p_grid, p_prefix, p_seed);
    return kExitUsage;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  } catch (const qnr::unsupported_request& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitMathInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}
