#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "qnr/bounds.hpp"
#include "qnr/matrix.hpp"
#include "qnr/radius.hpp"

namespace qnr {

/// Shared knobs for the property suites. Every suite is deterministic given
/// the seed; trials derive independent streams from (seed, index).
struct SuiteConfig {
  std::uint64_t seed = 42;
  int trials = 100;                        // per property
  std::vector<int> dims = {2, 3, 4};       // operand dims for random-matrix suites
  std::vector<int> n_values = {2, 3, 4, 5};
  std::vector<int> block_dims = {1, 2};
  std::vector<double> q_grid = {0.2, 0.5, 0.8, 1.0};
  int sandwich_seeds = 8;                  // instances per (family, n, d, q) cell
  std::vector<int> reduction_n = {2, 3, 4, 5, 6};
  std::vector<int> reduction_dims = {1, 2, 3};
  int reduction_instances = 3;
  AscentConfig ascent{32, 1500, 1e-11, 0};          // radius estimates in axiom suites
  AscentConfig sandwich_ascent{12, 800, 1e-11, 0};  // both sides of each sandwich
  double tol = 1e-6;            // axiom / block / closed-form tolerance
  double sandwich_tol = 1e-5;   // sandwich slack and q = 1 equality tolerance
  int threads = 0;              // 0 = auto (hardware, capped by RADIUS_THREADS)
};

/// Inputs needed to replay a single trial in isolation.
struct TrialRef {
  std::uint64_t seed = 0;
  int index = -1;
  double q = 0.0;
  std::string context;
  std::vector<ComplexMatrix> matrices;
};

/// Outcome of one property across its trials. `anchor` is the stable id
/// used by the coverage manifest; `worst_slack` is the smallest signed
/// margin seen (negative = by how much the worst trial failed).
struct PropertyRecord {
  std::string anchor;
  std::string title;
  int trials = 0;
  int failures = 0;
  double worst_slack = std::numeric_limits<double>::infinity();
  TrialRef worst;
  std::vector<TrialRef> failure_samples;  // capped at 10
};

struct SuiteReport {
  std::string suite;
  std::uint64_t seed = 0;
  std::vector<PropertyRecord> records;

  bool overall_pass() const;
  int total_failures() const;
};

SuiteReport run_axiom_suite(const SuiteConfig& cfg);
SuiteReport run_block_lemma_suite(const SuiteConfig& cfg);
SuiteReport run_sandwich_suite(const SuiteConfig& cfg);
SuiteReport run_classical_limit_suite(const SuiteConfig& cfg);
SuiteReport run_reduction_suite(const SuiteConfig& cfg);

std::vector<SuiteReport> run_all_suites(const SuiteConfig& cfg);

/// Sorted union of the anchors present in the reports.
std::vector<std::string> coverage_manifest(const std::vector<SuiteReport>& reports);

}  // namespace qnr
