#pragma once

#include <string>

#include <json.hpp>

#include "qnr/boundary.hpp"
#include "qnr/bounds.hpp"
#include "qnr/matrix.hpp"
#include "qnr/radius.hpp"
#include "qnr/structured.hpp"
#include "qnr/verify.hpp"

namespace qnr {

using ordered_json = nlohmann::ordered_json;

// Matrix wire format: {"dim": n, "entries": [[re, im], ...]} row-major,
// length n^2. Parsing rejects non-finite numbers.
ordered_json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const ordered_json& j);
ComplexMatrix load_matrix(const std::string& path);

// Structured spec wire format: {"family": str, "n": int, "blocks": [...]}.
ordered_json spec_to_json(const StructuredSpec& spec);
StructuredSpec spec_from_json(const ordered_json& j);
StructuredSpec load_spec(const std::string& path);

ordered_json estimate_to_json(const RadiusEstimate& est, const ComplexMatrix& a,
                              const QParameter& qp);
ordered_json bounds_to_json(const BoundsReport& rep);
ordered_json suite_to_json(const SuiteReport& rep);
ordered_json suites_to_json(const std::vector<SuiteReport>& reps,
                            const std::vector<std::string>& manifest);

/// Shortest round-trip decimal text for a binary64 value.
std::string format_double(double v);

/// Writes atomically (temp file + rename).
void atomic_write_file(const std::string& path, const std::string& content);

/// Minimal static polyline plot: fixed 800x800 viewport, equal aspect,
/// axis ticks.
std::string boundary_svg(const BoundaryTrace& trace);

std::string boundary_csv(const BoundaryTrace& trace);

}  // namespace qnr
