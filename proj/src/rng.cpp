#include "qnr/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace qnr {

Vec random_gaussian_vector(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> dist(0.0, 1.0);
  Vec v(dim);
  for (cplx& c : v) {
    const double re = dist(rng);
    const double im = dist(rng);
    c = cplx(re, im);
  }
  return v;
}

Vec random_unit_vector(int dim, std::mt19937_64& rng) {
  for (int attempt = 0; attempt < 64; ++attempt) {
    Vec v = random_gaussian_vector(dim, rng);
    const double n = norm(v);
    if (n > 1e-12) {
      for (cplx& c : v) c /= n;
      return v;
    }
  }
  throw std::runtime_error("random_unit_vector: degenerate draws");
}

ComplexMatrix random_gaussian_matrix(int dim, std::mt19937_64& rng) {
  return ComplexMatrix::from_entries(dim, random_gaussian_vector(dim * dim, rng));
}

ComplexMatrix random_unit_norm_matrix(int dim, std::mt19937_64& rng) {
  for (int attempt = 0; attempt < 64; ++attempt) {
    ComplexMatrix m = random_gaussian_matrix(dim, rng);
    const double nrm = operator_norm(m);
    if (nrm > 1e-8) {
      m *= cplx(1.0 / nrm, 0.0);
      return m;
    }
  }
  throw std::runtime_error("random_unit_norm_matrix: degenerate draws");
}

ComplexMatrix random_unitary(int dim, std::mt19937_64& rng) {
  // Modified Gram-Schmidt on Gaussian columns.
  std::vector<Vec> cols(dim);
  for (int j = 0; j < dim; ++j) {
    for (int attempt = 0;; ++attempt) {
      Vec v = random_gaussian_vector(dim, rng);
      for (int k = 0; k < j; ++k) {
        const cplx proj = inner(v, cols[k]);
        for (int i = 0; i < dim; ++i) v[i] -= proj * cols[k][i];
      }
      const double n = norm(v);
      if (n > 1e-8) {
        for (cplx& c : v) c /= n;
        cols[j] = std::move(v);
        break;
      }
      if (attempt > 64) throw std::runtime_error("random_unitary: degenerate draws");
    }
  }
  ComplexMatrix u(dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) u.at(i, j) = cols[j][i];
  return u;
}

}  // namespace qnr
