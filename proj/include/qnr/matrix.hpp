#pragma once

#include <complex>
#include <optional>
#include <stdexcept>
#include <vector>

namespace qnr {

using cplx = std::complex<double>;
using Vec = std::vector<cplx>;

/// Inner product, linear in the first argument: <u,v> = sum_i u_i * conj(v_i).
cplx inner(const Vec& u, const Vec& v);

double norm(const Vec& v);
Vec scaled(const Vec& v, cplx s);
Vec add(const Vec& u, const Vec& v);
Vec sub(const Vec& u, const Vec& v);

/// Unit vector in C^n. Construction checks the norm invariant (within 1e-12
/// of 1); normalized() rescales first.
class UnitVector {
 public:
  explicit UnitVector(Vec components);
  static UnitVector normalized(Vec components);

  int dim() const { return static_cast<int>(v_.size()); }
  const Vec& components() const { return v_; }

 private:
  Vec v_;
};

/// Dense square complex matrix, row-major. Entries must be finite.
class ComplexMatrix {
 public:
  explicit ComplexMatrix(int dim);  // zero matrix
  static ComplexMatrix identity(int dim);
  static ComplexMatrix from_entries(int dim, Vec entries);

  int dim() const { return dim_; }
  cplx& at(int i, int j) { return a_[static_cast<size_t>(i) * dim_ + j]; }
  const cplx& at(int i, int j) const {
    return a_[static_cast<size_t>(i) * dim_ + j];
  }
  const Vec& entries() const { return a_; }

  bool all_finite() const;

  ComplexMatrix& operator+=(const ComplexMatrix& rhs);
  ComplexMatrix& operator-=(const ComplexMatrix& rhs);
  ComplexMatrix& operator*=(cplx s);

  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) {
    return a += b;
  }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) {
    return a -= b;
  }
  friend ComplexMatrix operator*(cplx s, ComplexMatrix a) { return a *= s; }

 private:
  int dim_ = 0;
  Vec a_;
};

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b);

/// Exact matrix-vector product A*x.
Vec mat_apply(const ComplexMatrix& a, const Vec& x);
Vec mat_apply(const ComplexMatrix& a, const UnitVector& x);

/// Conjugate transpose.
ComplexMatrix adjoint(const ComplexMatrix& a);

/// Largest singular value via power iteration on A*A with a deterministic
/// seeded start and a Rayleigh-quotient convergence test (relative tolerance
/// 1e-10, hard cap 10000 iterations).
double operator_norm(const ComplexMatrix& a);

struct OperatorNormResult {
  double value = 0.0;
  bool converged = true;
  int iterations = 0;
};
OperatorNormResult operator_norm_detail(const ComplexMatrix& a);

/// Max-entry magnitude of U*U - I.
double unitarity_defect(const ComplexMatrix& u);

/// Approximate top right-singular vector (fixed-budget power iteration,
/// deterministic start). Used as a warm start by the radius machinery.
Vec top_singular_vector(const ComplexMatrix& a);

/// Largest entry magnitude of A - B.
double max_entry_distance(const ComplexMatrix& a, const ComplexMatrix& b);

using BlockGrid = std::vector<std::vector<std::optional<ComplexMatrix>>>;

/// Assembles an n*d square matrix from an n-by-n grid of optional d-by-d
/// blocks; absent cells mean a zero block. Throws on ragged blocks.
ComplexMatrix assemble_blocks(const BlockGrid& grid, int d);

/// Block (i, j) of m interpreted as a grid of d-by-d blocks.
ComplexMatrix extract_block(const ComplexMatrix& m, int i, int j, int d);

/// Block-diagonal matrix with the given equally sized blocks.
ComplexMatrix block_diagonal(const std::vector<ComplexMatrix>& blocks);

}  // namespace qnr
