#pragma once

#include <string>
#include <vector>

#include "qnr/matrix.hpp"

namespace qnr {

enum class Family {
  tridiagonal,
  alpha_tridiagonal,
  omega_tridiagonal,
  anti_tridiagonal,
  circulant,
  skew_circulant,
  imaginary_circulant,
  imaginary_skew_circulant,
};

const std::vector<Family>& all_families();
std::string family_name(Family f);
Family family_from_name(const std::string& name);
bool is_circulant_family(Family f);

/// Structured operator matrix description: a tridiagonal-type family takes
/// the block pair (T, S); a circulant-type family takes n blocks S_1..S_n.
struct StructuredSpec {
  Family family = Family::tridiagonal;
  int n = 2;
  std::vector<ComplexMatrix> blocks;

  int block_dim() const { return blocks.front().dim(); }
  void validate() const;
};

/// Scalars attached to a block count n:
///   omega = e^{2 pi i / n}   (n-th root of 1)
///   sigma = e^{pi i / n}     (n-th root of -1)
///   alpha = e^{pi i / 2n}    (n-th root of i; also the tridiagonal phase)
///   beta  = e^{-pi i / 2n}   (n-th root of -i)
///   cosines c_k = 2 cos(k pi / (n+1)), k = 1..n
struct FamilyConstants {
  cplx omega;
  cplx sigma;
  cplx alpha;
  cplx beta;
  std::vector<double> cosines;
};

FamilyConstants family_constants(int n);

/// The full (n*d)-by-(n*d) operator matrix of the family.
ComplexMatrix build_structured(const StructuredSpec& spec);

/// Unitary that block-diagonalizes the family: the sine transform for the
/// tridiagonal and anti-tridiagonal layouts, the Fourier block unitary for
/// the circulant one, and phase-scaled compositions for the rest.
ComplexMatrix reducing_unitary(Family family, int n, int d);

/// Closed-form diagonal blocks asserted by the matching reduction,
/// in label order k = 0..n-1 (circulant families) or k = 1..n
/// (tridiagonal families).
std::vector<ComplexMatrix> reduce_to_blocks(const StructuredSpec& spec);

/// Labels for the blocks, matching reduce_to_blocks order.
std::vector<int> block_labels(Family family, int n);

/// Which way the conjugation runs for this family's reduction.
enum class Orientation { u_m_ustar, ustar_m_u };
Orientation family_orientation(Family family);

struct BlockDiagonalization {
  ComplexMatrix unitary;
  std::vector<ComplexMatrix> blocks;
  double residual = 0.0;  // reported, not asserted
  Orientation orientation = Orientation::u_m_ustar;
};

/// Conjugates the built matrix by the reducing unitary (orientation chosen
/// per family) and reports the max-entry distance from the block-diagonal
/// of the closed-form blocks.
BlockDiagonalization block_diagonalize(const StructuredSpec& spec);

}  // namespace qnr
