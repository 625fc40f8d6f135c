#include "qnr/structured.hpp"

#include <cmath>
#include <stdexcept>

namespace qnr {

const std::vector<Family>& all_families() {
  static const std::vector<Family> fams = {
      Family::tridiagonal,        Family::alpha_tridiagonal,
      Family::omega_tridiagonal,  Family::anti_tridiagonal,
      Family::circulant,          Family::skew_circulant,
      Family::imaginary_circulant, Family::imaginary_skew_circulant,
  };
  return fams;
}

std::string family_name(Family f) {
  switch (f) {
    case Family::tridiagonal: return "tridiagonal";
    case Family::alpha_tridiagonal: return "alpha_tridiagonal";
    case Family::omega_tridiagonal: return "omega_tridiagonal";
    case Family::anti_tridiagonal: return "anti_tridiagonal";
    case Family::circulant: return "circulant";
    case Family::skew_circulant: return "skew_circulant";
    case Family::imaginary_circulant: return "imaginary_circulant";
    case Family::imaginary_skew_circulant: return "imaginary_skew_circulant";
  }
  throw std::logic_error("family_name: unknown family");
}

Family family_from_name(const std::string& name) {
  for (Family f : all_families()) {
    if (family_name(f) == name) return f;
  }
  throw std::invalid_argument("unknown family: " + name);
}

bool is_circulant_family(Family f) {
  switch (f) {
    case Family::circulant:
    case Family::skew_circulant:
    case Family::imaginary_circulant:
    case Family::imaginary_skew_circulant:
      return true;
    default:
      return false;
  }
}

void StructuredSpec::validate() const {
  if (n < 2) throw std::invalid_argument("StructuredSpec: n must be >= 2");
  const size_t expected = is_circulant_family(family) ? static_cast<size_t>(n) : 2u;
  if (blocks.size() != expected) {
    throw std::invalid_argument("StructuredSpec: family needs " + std::to_string(expected) +
                                " blocks, got " + std::to_string(blocks.size()));
  }
  const int d = blocks.front().dim();
  for (const ComplexMatrix& b : blocks) {
    if (b.dim() != d) throw std::invalid_argument("StructuredSpec: blocks must share dimension");
  }
}

FamilyConstants family_constants(int n) {
  if (n < 1) throw std::invalid_argument("family_constants: n must be positive");
  FamilyConstants fc;
  fc.omega = std::polar(1.0, 2.0 * M_PI / n);
  fc.sigma = std::polar(1.0, M_PI / n);
  fc.alpha = std::polar(1.0, M_PI / (2.0 * n));
  fc.beta = std::polar(1.0, -M_PI / (2.0 * n));
  fc.cosines.resize(n);
  for (int k = 1; k <= n; ++k) fc.cosines[k - 1] = 2.0 * std::cos(k * M_PI / (n + 1));
  return fc;
}

namespace {

cplx unit_power(cplx z, long e) {
  // Integer powers of a unit scalar via the argument, exact up to rounding.
  return std::polar(1.0, std::arg(z) * static_cast<double>(e));
}

// Phase multiplier applied below the main diagonal in the circulant layouts.
cplx subdiagonal_phase(Family f) {
  switch (f) {
    case Family::circulant: return {1.0, 0.0};
    case Family::skew_circulant: return {-1.0, 0.0};
    case Family::imaginary_circulant: return {0.0, 1.0};
    case Family::imaginary_skew_circulant: return {0.0, -1.0};
    default: throw std::logic_error("subdiagonal_phase: not a circulant family");
  }
}

// Root whose powers form the k-th reduced block coefficients.
cplx family_root(Family f, const FamilyConstants& fc, int k) {
  const cplx wk = unit_power(fc.omega, k);
  switch (f) {
    case Family::circulant: return wk;
    case Family::skew_circulant: return fc.sigma * wk;
    case Family::imaginary_circulant: return fc.alpha * wk;
    case Family::imaginary_skew_circulant: return fc.beta * wk;
    default: throw std::logic_error("family_root: not a circulant family");
  }
}

ComplexMatrix scaled_block(const ComplexMatrix& b, cplx s) {
  ComplexMatrix r = b;
  r *= s;
  return r;
}

// DFT block unitary F_{jk} = omega^{jk} / sqrt(n) (zero-based j, k).
ComplexMatrix fourier_unitary(int n, int d) {
  ComplexMatrix u(n * d);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      // Reduce the exponent mod n to keep the angle small.
      const long e = static_cast<long>(j) * k % n;
      const cplx val = scale * std::polar(1.0, 2.0 * M_PI * e / n);
      for (int i = 0; i < d; ++i) u.at(j * d + i, k * d + i) = val;
    }
  }
  return u;
}

// Sine transform U_{jk} = sqrt(2/(n+1)) sin(jk pi/(n+1)) (one-based j, k);
// real, symmetric, involutory.
ComplexMatrix sine_unitary(int n, int d) {
  ComplexMatrix u(n * d);
  const double scale = std::sqrt(2.0 / (n + 1));
  for (int j = 1; j <= n; ++j) {
    for (int k = 1; k <= n; ++k) {
      const double val = scale * std::sin(j * k * M_PI / (n + 1));
      for (int i = 0; i < d; ++i) u.at((j - 1) * d + i, (k - 1) * d + i) = val;
    }
  }
  return u;
}

// diag(zeta^0, ..., zeta^{n-1}) tensor I_d.
ComplexMatrix phase_diagonal(cplx zeta, int n, int d) {
  ComplexMatrix u(n * d);
  for (int j = 0; j < n; ++j) {
    const cplx val = unit_power(zeta, j);
    for (int i = 0; i < d; ++i) u.at(j * d + i, j * d + i) = val;
  }
  return u;
}

}  // namespace

ComplexMatrix build_structured(const StructuredSpec& spec) {
  spec.validate();
  const int n = spec.n;
  const int d = spec.block_dim();
  const FamilyConstants fc = family_constants(n);
  BlockGrid grid(n, std::vector<std::optional<ComplexMatrix>>(n));

  if (is_circulant_family(spec.family)) {
    const cplx phase = subdiagonal_phase(spec.family);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        const int idx = ((j - i) % n + n) % n;  // S_{idx+1}
        const cplx s = j < i ? phase : cplx(1.0, 0.0);
        grid[i][j] = scaled_block(spec.blocks[idx], s);
      }
    }
    return assemble_blocks(grid, d);
  }

  const ComplexMatrix& t = spec.blocks[0];
  const ComplexMatrix& s = spec.blocks[1];
  switch (spec.family) {
    case Family::tridiagonal:
      for (int i = 0; i < n; ++i) {
        grid[i][i] = t;
        if (i + 1 < n) {
          grid[i][i + 1] = s;
          grid[i + 1][i] = s;
        }
      }
      break;
    case Family::alpha_tridiagonal: {
      // Super-diagonal alpha^{n-2} S, sub-diagonal alpha^n S = i S: the
      // layout the diagonal-phase conjugation turns into the uniform
      // tridiagonal matrix with off-diagonal block alpha^{n-1} S.
      const cplx super = unit_power(fc.alpha, n - 2);
      const cplx sub = cplx(0.0, 1.0);
      for (int i = 0; i < n; ++i) {
        grid[i][i] = t;
        if (i + 1 < n) {
          grid[i][i + 1] = scaled_block(s, super);
          grid[i + 1][i] = scaled_block(s, sub);
        }
      }
      break;
    }
    case Family::omega_tridiagonal: {
      const cplx super = unit_power(fc.omega, n - 1);
      const cplx sub = fc.omega;
      for (int i = 0; i < n; ++i) {
        grid[i][i] = t;
        if (i + 1 < n) {
          grid[i][i + 1] = scaled_block(s, super);
          grid[i + 1][i] = scaled_block(s, sub);
        }
      }
      break;
    }
    case Family::anti_tridiagonal:
      // Flip of the tridiagonal layout: T where i + j = n - 1 (zero-based),
      // S on the two neighbouring anti-diagonals.
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
          if (i + j == n - 1) grid[i][j] = t;
          if (i + j == n - 2 || i + j == n) grid[i][j] = s;
        }
      }
      break;
    default:
      throw std::logic_error("build_structured: unhandled family");
  }
  return assemble_blocks(grid, d);
}

ComplexMatrix reducing_unitary(Family family, int n, int d) {
  if (n < 2 || d < 1) throw std::invalid_argument("reducing_unitary: need n >= 2, d >= 1");
  const FamilyConstants fc = family_constants(n);
  switch (family) {
    case Family::tridiagonal:
    case Family::anti_tridiagonal:
      return sine_unitary(n, d);
    case Family::alpha_tridiagonal:
      return matmul(sine_unitary(n, d), phase_diagonal(std::conj(fc.alpha), n, d));
    case Family::omega_tridiagonal:
      return matmul(sine_unitary(n, d), phase_diagonal(std::conj(fc.omega), n, d));
    case Family::circulant:
      return fourier_unitary(n, d);
    case Family::skew_circulant:
      return matmul(fourier_unitary(n, d), phase_diagonal(fc.sigma, n, d));
    case Family::imaginary_circulant:
      return matmul(phase_diagonal(fc.alpha, n, d), fourier_unitary(n, d));
    case Family::imaginary_skew_circulant:
      return matmul(phase_diagonal(fc.beta, n, d), fourier_unitary(n, d));
  }
  throw std::logic_error("reducing_unitary: unknown family");
}

std::vector<ComplexMatrix> reduce_to_blocks(const StructuredSpec& spec) {
  spec.validate();
  const int n = spec.n;
  const int d = spec.block_dim();
  const FamilyConstants fc = family_constants(n);
  std::vector<ComplexMatrix> out;
  out.reserve(n);

  if (is_circulant_family(spec.family)) {
    // k = 0..n-1. Exponent signs follow each reduction's exact conjugation:
    // (1 - i) for the circulant and skew layouts, (i - 1) for the imaginary
    // ones (the latter matches the two-block special cases).
    const bool exponent_down =
        spec.family == Family::circulant || spec.family == Family::skew_circulant;
    for (int k = 0; k < n; ++k) {
      const cplx root = family_root(spec.family, fc, k);
      ComplexMatrix acc(d);
      for (int i = 1; i <= n; ++i) {
        const long e = exponent_down ? static_cast<long>(1 - i) : static_cast<long>(i - 1);
        acc += scaled_block(spec.blocks[i - 1], unit_power(root, e));
      }
      out.push_back(std::move(acc));
    }
    return out;
  }

  // Tridiagonal families: k = 1..n, coefficient from the sine-transform
  // eigenstructure.
  const ComplexMatrix& t = spec.blocks[0];
  const ComplexMatrix& s = spec.blocks[1];
  for (int k = 1; k <= n; ++k) {
    const double ck = fc.cosines[k - 1];
    cplx coeff(ck, 0.0);
    cplx whole(1.0, 0.0);
    switch (spec.family) {
      case Family::tridiagonal:
      case Family::omega_tridiagonal:
        break;
      case Family::alpha_tridiagonal:
        coeff *= unit_power(fc.alpha, n - 1);
        break;
      case Family::anti_tridiagonal:
        whole = (k % 2 == 1) ? cplx(1.0, 0.0) : cplx(-1.0, 0.0);
        break;
      default:
        throw std::logic_error("reduce_to_blocks: unhandled family");
    }
    ComplexMatrix blk = t;
    blk += scaled_block(s, coeff);
    blk *= whole;
    out.push_back(std::move(blk));
  }
  return out;
}

std::vector<int> block_labels(Family family, int n) {
  std::vector<int> labels(n);
  const int base = is_circulant_family(family) ? 0 : 1;
  for (int k = 0; k < n; ++k) labels[k] = base + k;
  return labels;
}

Orientation family_orientation(Family family) {
  switch (family) {
    case Family::imaginary_circulant:
    case Family::imaginary_skew_circulant:
      return Orientation::ustar_m_u;
    default:
      return Orientation::u_m_ustar;
  }
}

BlockDiagonalization block_diagonalize(const StructuredSpec& spec) {
  spec.validate();
  BlockDiagonalization r{reducing_unitary(spec.family, spec.n, spec.block_dim()),
                         reduce_to_blocks(spec), 0.0, family_orientation(spec.family)};
  const ComplexMatrix m = build_structured(spec);
  const ComplexMatrix ustar = adjoint(r.unitary);
  const ComplexMatrix conj_m = r.orientation == Orientation::u_m_ustar
                                   ? matmul(matmul(r.unitary, m), ustar)
                                   : matmul(matmul(ustar, m), r.unitary);
  r.residual = max_entry_distance(conj_m, block_diagonal(r.blocks));
  return r;
}

}  // namespace qnr
