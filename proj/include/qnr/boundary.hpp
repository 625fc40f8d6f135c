#pragma once

#include "qnr/matrix.hpp"
#include "qnr/qparam.hpp"
#include "qnr/radius.hpp"

namespace qnr {

/// Support function of the q-range in direction theta:
///   h(theta) = max over unit x of
///     Re(e^{-i theta} q <Ax, x>) + p sqrt(||Ax||^2 - |<Ax, x>|^2),
/// maximized with the same restart/ascent machinery as the radius.
double support_function(const ComplexMatrix& a, const QParameter& qp, double theta,
                        const AscentConfig& cfg = {});

/// Support values on a uniform angle grid plus the boundary polygon
/// recovered from intersections of consecutive support lines.
struct BoundaryTrace {
  std::vector<double> thetas;
  std::vector<double> support_values;
  Vec points;
};

BoundaryTrace trace_boundary(const ComplexMatrix& a, const QParameter& qp,
                             int grid_size, const AscentConfig& cfg = {});

/// Largest violation of Re(e^{-i theta} point) <= h(theta) over all points
/// and all grid angles; the trace invariant asks for <= 1e-7 on ranges with
/// smooth boundary.
double max_halfplane_violation(const BoundaryTrace& trace);

}  // namespace qnr
