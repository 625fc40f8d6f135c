#pragma once

#include <cstdint>
#include <random>

#include "qnr/matrix.hpp"

namespace qnr {

/// Stream-split generator: independent deterministic stream per
/// (seed, stream) pair, so work items can run in any order.
inline std::mt19937_64 make_rng(std::uint64_t seed, std::uint64_t stream = 0) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32),
                    0x9e3779b9u};
  return std::mt19937_64(seq);
}

Vec random_gaussian_vector(int dim, std::mt19937_64& rng);

/// Uniform point on the unit sphere of C^dim (normalized complex Gaussian).
Vec random_unit_vector(int dim, std::mt19937_64& rng);

/// i.i.d. complex standard Gaussian entries.
ComplexMatrix random_gaussian_matrix(int dim, std::mt19937_64& rng);

/// Gaussian matrix rescaled to unit operator norm.
ComplexMatrix random_unit_norm_matrix(int dim, std::mt19937_64& rng);

/// Unitary obtained by orthonormalizing a random Gaussian matrix.
ComplexMatrix random_unitary(int dim, std::mt19937_64& rng);

}  // namespace qnr
