#include "qnr/matrix.hpp"

#include <cmath>
#include <cstdint>
#include <random>

namespace qnr {

cplx inner(const Vec& u, const Vec& v) {
  if (u.size() != v.size()) {
    throw std::invalid_argument("inner: dimension mismatch");
  }
  cplx s = 0.0;
  for (size_t i = 0; i < u.size(); ++i) s += u[i] * std::conj(v[i]);
  return s;
}

double norm(const Vec& v) {
  double s = 0.0;
  for (const cplx& c : v) s += std::norm(c);
  return std::sqrt(s);
}

Vec scaled(const Vec& v, cplx s) {
  Vec r = v;
  for (cplx& c : r) c *= s;
  return r;
}

Vec add(const Vec& u, const Vec& v) {
  if (u.size() != v.size()) throw std::invalid_argument("add: dimension mismatch");
  Vec r = u;
  for (size_t i = 0; i < v.size(); ++i) r[i] += v[i];
  return r;
}

Vec sub(const Vec& u, const Vec& v) {
  if (u.size() != v.size()) throw std::invalid_argument("sub: dimension mismatch");
  Vec r = u;
  for (size_t i = 0; i < v.size(); ++i) r[i] -= v[i];
  return r;
}

UnitVector::UnitVector(Vec components) : v_(std::move(components)) {
  if (v_.empty()) throw std::invalid_argument("UnitVector: empty vector");
  if (std::abs(norm(v_) - 1.0) > 1e-12) {
    throw std::invalid_argument("UnitVector: norm deviates from 1 by more than 1e-12");
  }
}

UnitVector UnitVector::normalized(Vec components) {
  double n = norm(components);
  if (!(n > 0.0) || !std::isfinite(n)) {
    throw std::invalid_argument("UnitVector: cannot normalize zero or non-finite vector");
  }
  for (cplx& c : components) c /= n;
  return UnitVector(std::move(components));
}

ComplexMatrix::ComplexMatrix(int dim) : dim_(dim) {
  if (dim <= 0) throw std::invalid_argument("ComplexMatrix: dim must be positive");
  a_.assign(static_cast<size_t>(dim) * dim, cplx(0.0, 0.0));
}

ComplexMatrix ComplexMatrix::identity(int dim) {
  ComplexMatrix m(dim);
  for (int i = 0; i < dim; ++i) m.at(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::from_entries(int dim, Vec entries) {
  if (dim <= 0) throw std::invalid_argument("ComplexMatrix: dim must be positive");
  if (entries.size() != static_cast<size_t>(dim) * dim) {
    throw std::invalid_argument("ComplexMatrix: entries length must be dim^2");
  }
  ComplexMatrix m(dim);
  m.a_ = std::move(entries);
  if (!m.all_finite()) {
    throw std::invalid_argument("ComplexMatrix: entries must be finite");
  }
  return m;
}

bool ComplexMatrix::all_finite() const {
  for (const cplx& c : a_) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) return false;
  }
  return true;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& rhs) {
  if (dim_ != rhs.dim_) throw std::invalid_argument("matrix +: dimension mismatch");
  for (size_t i = 0; i < a_.size(); ++i) a_[i] += rhs.a_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& rhs) {
  if (dim_ != rhs.dim_) throw std::invalid_argument("matrix -: dimension mismatch");
  for (size_t i = 0; i < a_.size(); ++i) a_[i] -= rhs.a_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cplx s) {
  for (cplx& c : a_) c *= s;
  return *this;
}

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("matmul: dimension mismatch");
  const int n = a.dim();
  ComplexMatrix c(n);
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) {
      const cplx aik = a.at(i, k);
      if (aik == cplx(0.0, 0.0)) continue;
      for (int j = 0; j < n; ++j) c.at(i, j) += aik * b.at(k, j);
    }
  }
  return c;
}

Vec mat_apply(const ComplexMatrix& a, const Vec& x) {
  if (static_cast<size_t>(a.dim()) != x.size()) {
    throw std::invalid_argument("mat_apply: dimension mismatch");
  }
  const int n = a.dim();
  Vec y(x.size(), cplx(0.0, 0.0));
  for (int i = 0; i < n; ++i) {
    cplx s = 0.0;
    for (int j = 0; j < n; ++j) s += a.at(i, j) * x[j];
    y[i] = s;
  }
  return y;
}

Vec mat_apply(const ComplexMatrix& a, const UnitVector& x) {
  return mat_apply(a, x.components());
}

ComplexMatrix adjoint(const ComplexMatrix& a) {
  const int n = a.dim();
  ComplexMatrix b(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) b.at(i, j) = std::conj(a.at(j, i));
  return b;
}

namespace {

// A^H * (A * x) without materializing A^H A.
Vec gram_apply(const ComplexMatrix& a, const Vec& x) {
  const Vec ax = mat_apply(a, x);
  const int n = a.dim();
  Vec y(x.size(), cplx(0.0, 0.0));
  for (int j = 0; j < n; ++j) {
    cplx s = 0.0;
    for (int i = 0; i < n; ++i) s += std::conj(a.at(i, j)) * ax[i];
    y[j] = s;
  }
  return y;
}

}  // namespace

OperatorNormResult operator_norm_detail(const ComplexMatrix& a) {
  const int n = a.dim();
  double frob2 = 0.0;
  for (const cplx& c : a.entries()) frob2 += std::norm(c);
  if (frob2 == 0.0) return {0.0, true, 0};

  // Deterministic seeded start.
  std::mt19937_64 rng(0x9e3779b97f4a7c15ull ^ static_cast<uint64_t>(n));
  std::normal_distribution<double> dist(0.0, 1.0);
  Vec y(n);
  for (cplx& c : y) c = cplx(dist(rng), dist(rng));
  double yn = norm(y);
  for (cplx& c : y) c /= yn;

  constexpr int kMaxIters = 10000;
  constexpr double kRelTol = 1e-12;  // on lambda = sigma^2; well inside 1e-10 on sigma
  double lambda = 0.0;
  int patience = 0;
  for (int it = 1; it <= kMaxIters; ++it) {
    Vec z = gram_apply(a, y);
    const double zn = norm(z);
    if (zn == 0.0) return {0.0, true, it};  // y in the kernel of A
    for (cplx& c : z) c /= zn;
    // Rayleigh quotient of A^H A at the normalized iterate.
    const double ray = std::real(inner(gram_apply(a, z), z));
    const double diff = std::abs(ray - lambda);
    lambda = ray;
    y = std::move(z);
    if (diff <= kRelTol * std::max(lambda, 1e-300)) {
      if (++patience >= 2) return {std::sqrt(std::max(lambda, 0.0)), true, it};
    } else {
      patience = 0;
    }
  }
  return {std::sqrt(std::max(lambda, 0.0)), false, kMaxIters};
}

double operator_norm(const ComplexMatrix& a) { return operator_norm_detail(a).value; }

Vec top_singular_vector(const ComplexMatrix& a) {
  const int n = a.dim();
  std::mt19937_64 rng(0x517u ^ static_cast<uint64_t>(n));
  std::normal_distribution<double> dist(0.0, 1.0);
  Vec y(n);
  for (cplx& c : y) c = cplx(dist(rng), dist(rng));
  double yn = norm(y);
  for (cplx& c : y) c /= yn;
  for (int it = 0; it < 100; ++it) {
    Vec z = gram_apply(a, y);
    const double zn = norm(z);
    if (zn < 1e-280) break;  // (near-)zero matrix: any unit vector serves
    for (cplx& c : z) c /= zn;
    y = std::move(z);
  }
  return y;
}

double unitarity_defect(const ComplexMatrix& u) {
  const ComplexMatrix g = matmul(adjoint(u), u);
  double worst = 0.0;
  const int n = g.dim();
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const cplx e = g.at(i, j) - (i == j ? cplx(1.0, 0.0) : cplx(0.0, 0.0));
      worst = std::max(worst, std::abs(e));
    }
  }
  return worst;
}

double max_entry_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("max_entry_distance: dimension mismatch");
  double worst = 0.0;
  for (size_t i = 0; i < a.entries().size(); ++i) {
    worst = std::max(worst, std::abs(a.entries()[i] - b.entries()[i]));
  }
  return worst;
}

ComplexMatrix assemble_blocks(const BlockGrid& grid, int d) {
  const int n = static_cast<int>(grid.size());
  if (n == 0 || d <= 0) throw std::invalid_argument("assemble_blocks: empty grid");
  ComplexMatrix m(n * d);
  for (int bi = 0; bi < n; ++bi) {
    if (static_cast<int>(grid[bi].size()) != n) {
      throw std::invalid_argument("assemble_blocks: grid must be n-by-n");
    }
    for (int bj = 0; bj < n; ++bj) {
      const auto& cell = grid[bi][bj];
      if (!cell.has_value()) continue;
      if (cell->dim() != d) throw std::invalid_argument("assemble_blocks: ragged block");
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) m.at(bi * d + i, bj * d + j) = cell->at(i, j);
    }
  }
  return m;
}

ComplexMatrix extract_block(const ComplexMatrix& m, int i, int j, int d) {
  if (d <= 0 || m.dim() % d != 0) throw std::invalid_argument("extract_block: bad block dim");
  const int n = m.dim() / d;
  if (i < 0 || j < 0 || i >= n || j >= n) throw std::invalid_argument("extract_block: out of range");
  ComplexMatrix b(d);
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c) b.at(r, c) = m.at(i * d + r, j * d + c);
  return b;
}

ComplexMatrix block_diagonal(const std::vector<ComplexMatrix>& blocks) {
  if (blocks.empty()) throw std::invalid_argument("block_diagonal: empty block list");
  const int d = blocks.front().dim();
  BlockGrid grid(blocks.size(), std::vector<std::optional<ComplexMatrix>>(blocks.size()));
  for (size_t k = 0; k < blocks.size(); ++k) {
    if (blocks[k].dim() != d) throw std::invalid_argument("block_diagonal: ragged block");
    grid[k][k] = blocks[k];
  }
  return assemble_blocks(grid, d);
}

}  // namespace qnr
