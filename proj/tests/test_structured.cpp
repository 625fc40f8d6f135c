#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qnr/rng.hpp"
#include "qnr/structured.hpp"

using namespace qnr;

namespace {

ComplexMatrix scalar(double re, double im = 0.0) {
  ComplexMatrix m(1);
  m.at(0, 0) = cplx(re, im);
  return m;
}

StructuredSpec spec_of(Family f, int n, std::vector<ComplexMatrix> blocks) {
  StructuredSpec s;
  s.family = f;
  s.n = n;
  s.blocks = std::move(blocks);
  return s;
}

}  // namespace

TEST_CASE("family constants are the advertised roots") {
  for (int n = 2; n <= 8; ++n) {
    const FamilyConstants fc = family_constants(n);
    auto powc = [](cplx z, int e) { return std::pow(z, e); };
    CHECK(std::abs(powc(fc.omega, n) - cplx(1, 0)) < 1e-12);
    CHECK(std::abs(powc(fc.sigma, n) - cplx(-1, 0)) < 1e-12);
    CHECK(std::abs(powc(fc.alpha, n) - cplx(0, 1)) < 1e-12);
    CHECK(std::abs(powc(fc.beta, n) - cplx(0, -1)) < 1e-12);
    for (int k = 1; k <= n; ++k) {
      CHECK(fc.cosines[k - 1] == doctest::Approx(2.0 * std::cos(k * M_PI / (n + 1))));
    }
  }
}

TEST_CASE("builders lay the blocks out as displayed") {
  auto rng = make_rng(29);
  const ComplexMatrix t = random_gaussian_matrix(2, rng);
  const ComplexMatrix s = random_gaussian_matrix(2, rng);

  const ComplexMatrix circ = build_structured(spec_of(Family::circulant, 2, {t, s}));
  CHECK(max_entry_distance(extract_block(circ, 0, 0, 2), t) == 0.0);
  CHECK(max_entry_distance(extract_block(circ, 0, 1, 2), s) == 0.0);
  CHECK(max_entry_distance(extract_block(circ, 1, 0, 2), s) == 0.0);
  CHECK(max_entry_distance(extract_block(circ, 1, 1, 2), t) == 0.0);

  const ComplexMatrix skew = build_structured(spec_of(Family::skew_circulant, 2, {t, s}));
  ComplexMatrix neg_s = s;
  neg_s *= cplx(-1, 0);
  CHECK(max_entry_distance(extract_block(skew, 1, 0, 2), neg_s) == 0.0);

  const ComplexMatrix imag = build_structured(spec_of(Family::imaginary_circulant, 2, {t, s}));
  ComplexMatrix i_s = s;
  i_s *= cplx(0, 1);
  CHECK(max_entry_distance(extract_block(imag, 1, 0, 2), i_s) == 0.0);

  const ComplexMatrix iskew =
      build_structured(spec_of(Family::imaginary_skew_circulant, 2, {t, s}));
  ComplexMatrix mi_s = s;
  mi_s *= cplx(0, -1);
  CHECK(max_entry_distance(extract_block(iskew, 1, 0, 2), mi_s) == 0.0);

  const ComplexMatrix tri =
      build_structured(spec_of(Family::tridiagonal, 3, {scalar(2), scalar(1)}));
  CHECK(max_entry_distance(tri, ComplexMatrix::from_entries(3, {2, 1, 0, 1, 2, 1, 0, 1, 2})) ==
        0.0);

  const ComplexMatrix anti =
      build_structured(spec_of(Family::anti_tridiagonal, 2, {scalar(2), scalar(3)}));
  CHECK(max_entry_distance(anti, ComplexMatrix::from_entries(2, {3, 2, 2, 3})) == 0.0);
}

TEST_CASE("spec validation") {
  CHECK_THROWS_AS(build_structured(spec_of(Family::circulant, 3, {scalar(1), scalar(2)})),
                  std::invalid_argument);
  CHECK_THROWS_AS(build_structured(spec_of(Family::tridiagonal, 1, {scalar(1), scalar(2)})),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      build_structured(spec_of(Family::tridiagonal, 2,
                               {ComplexMatrix::identity(2), ComplexMatrix::identity(3)})),
      std::invalid_argument);
  CHECK_THROWS_AS(family_from_name("pentadiagonal"), std::invalid_argument);
}

TEST_CASE("reducing unitaries: closed entries and unitarity") {
  const ComplexMatrix had = reducing_unitary(Family::tridiagonal, 2, 1);
  const double s = 1.0 / std::sqrt(2.0);
  CHECK(max_entry_distance(had, ComplexMatrix::from_entries(2, {s, s, s, -s})) < 1e-15);

  CHECK(unitarity_defect(reducing_unitary(Family::circulant, 4, 1)) < 1e-12);

  const ComplexMatrix skew_u = reducing_unitary(Family::skew_circulant, 2, 1);
  const ComplexMatrix expected = ComplexMatrix::from_entries(
      2, {cplx(s, 0), cplx(0, s), cplx(s, 0), cplx(0, -s)});
  CHECK(max_entry_distance(skew_u, expected) < 1e-14);

  for (Family f : all_families()) {
    for (int n : {2, 3, 5}) {
      for (int d : {1, 3}) {
        CHECK(unitarity_defect(reducing_unitary(f, n, d)) < 1e-10);
      }
    }
  }
}

TEST_CASE("closed-form blocks of the two-operator corollaries") {
  auto rng = make_rng(37);
  const ComplexMatrix t = random_gaussian_matrix(2, rng);
  const ComplexMatrix s = random_gaussian_matrix(2, rng);
  auto combo = [&](cplx c) {
    ComplexMatrix m = t;
    ComplexMatrix cs = s;
    cs *= c;
    m += cs;
    return m;
  };
  const cplx iu(0, 1);
  const double r2 = std::sqrt(2.0);

  auto blocks = reduce_to_blocks(spec_of(Family::circulant, 2, {t, s}));
  CHECK(max_entry_distance(blocks[0], combo(1.0)) < 1e-14);
  CHECK(max_entry_distance(blocks[1], combo(-1.0)) < 1e-14);

  blocks = reduce_to_blocks(spec_of(Family::skew_circulant, 2, {t, s}));
  CHECK(max_entry_distance(blocks[0], combo(-iu)) < 1e-14);
  CHECK(max_entry_distance(blocks[1], combo(iu)) < 1e-14);

  blocks = reduce_to_blocks(spec_of(Family::imaginary_circulant, 2, {t, s}));
  CHECK(max_entry_distance(blocks[0], combo((1.0 + iu) / r2)) < 1e-14);
  CHECK(max_entry_distance(blocks[1], combo(-(1.0 + iu) / r2)) < 1e-14);

  blocks = reduce_to_blocks(spec_of(Family::imaginary_skew_circulant, 2, {t, s}));
  CHECK(max_entry_distance(blocks[0], combo((1.0 - iu) / r2)) < 1e-14);
  CHECK(max_entry_distance(blocks[1], combo(-(1.0 - iu) / r2)) < 1e-14);

  blocks = reduce_to_blocks(spec_of(Family::tridiagonal, 3, {t, s}));
  CHECK(max_entry_distance(blocks[0], combo(r2)) < 1e-13);
  CHECK(max_entry_distance(blocks[1], combo(0.0)) < 1e-13);
  CHECK(max_entry_distance(blocks[2], combo(-r2)) < 1e-13);
}

TEST_CASE("circulant reduction with equal blocks is the geometric sum") {
  auto rng = make_rng(41);
  for (int n : {2, 3, 5}) {
    const ComplexMatrix s = random_gaussian_matrix(2, rng);
    std::vector<ComplexMatrix> same(n, s);
    const auto blocks = reduce_to_blocks(spec_of(Family::circulant, n, same));
    ComplexMatrix ns = s;
    ns *= cplx(n, 0);
    CHECK(max_entry_distance(blocks[0], ns) < 1e-12);
    for (int k = 1; k < n; ++k) {
      CHECK(max_entry_distance(blocks[k], ComplexMatrix(2)) < 1e-12);
    }
  }
}

TEST_CASE("skew blocks equal circulant blocks of phase-scaled inputs") {
  auto rng = make_rng(43);
  for (int n : {2, 3, 4}) {
    std::vector<ComplexMatrix> blocks;
    for (int i = 0; i < n; ++i) blocks.push_back(random_gaussian_matrix(2, rng));
    const auto skew = reduce_to_blocks(spec_of(Family::skew_circulant, n, blocks));

    const FamilyConstants fc = family_constants(n);
    std::vector<ComplexMatrix> scaled;
    for (int i = 1; i <= n; ++i) {
      ComplexMatrix m = blocks[i - 1];
      m *= std::pow(fc.sigma, 1 - i);
      scaled.push_back(std::move(m));
    }
    const auto circ = reduce_to_blocks(spec_of(Family::circulant, n, scaled));
    for (int k = 0; k < n; ++k) CHECK(max_entry_distance(skew[k], circ[k]) < 1e-12);
  }
}

TEST_CASE("anti-tridiagonal blocks are alternating-sign tridiagonal blocks") {
  auto rng = make_rng(47);
  for (int n : {2, 3, 5}) {
    const ComplexMatrix t = random_gaussian_matrix(2, rng);
    const ComplexMatrix s = random_gaussian_matrix(2, rng);
    const auto tri = reduce_to_blocks(spec_of(Family::tridiagonal, n, {t, s}));
    const auto anti = reduce_to_blocks(spec_of(Family::anti_tridiagonal, n, {t, s}));
    for (int k = 1; k <= n; ++k) {
      ComplexMatrix want = tri[k - 1];
      want *= cplx(k % 2 == 1 ? 1.0 : -1.0, 0);
      CHECK(max_entry_distance(anti[k - 1], want) == 0.0);
    }
  }
}

TEST_CASE("block_diagonalize closed cases") {
  // 1x1 anti-tridiagonal pair reduces to {t + s, s - t} by hand.
  const double tv = 0.8, sv = -0.35;
  const BlockDiagonalization anti =
      block_diagonalize(spec_of(Family::anti_tridiagonal, 2, {scalar(tv), scalar(sv)}));
  CHECK(std::abs(anti.blocks[0].at(0, 0) - cplx(tv + sv, 0)) < 1e-14);
  CHECK(std::abs(anti.blocks[1].at(0, 0) - cplx(sv - tv, 0)) < 1e-14);
  CHECK(anti.residual < 1e-12);

  const BlockDiagonalization tri =
      block_diagonalize(spec_of(Family::tridiagonal, 3, {scalar(2), scalar(1)}));
  CHECK(std::abs(tri.blocks[0].at(0, 0) - cplx(2 + std::sqrt(2.0), 0)) < 1e-12);
  CHECK(std::abs(tri.blocks[1].at(0, 0) - cplx(2, 0)) < 1e-12);
  CHECK(std::abs(tri.blocks[2].at(0, 0) - cplx(2 - std::sqrt(2.0), 0)) < 1e-12);
  CHECK(tri.residual < 1e-12);

  auto rng = make_rng(53);
  std::vector<ComplexMatrix> blocks;
  for (int i = 0; i < 3; ++i) blocks.push_back(random_gaussian_matrix(2, rng));
  const BlockDiagonalization circ =
      block_diagonalize(spec_of(Family::circulant, 3, blocks));
  CHECK(circ.residual < 1e-10);
  CHECK(circ.orientation == Orientation::u_m_ustar);
  CHECK(family_orientation(Family::imaginary_circulant) == Orientation::ustar_m_u);
}

TEST_CASE("reduction grid: unitarity and residual gates") {
  auto rng = make_rng(59);
  for (Family f : all_families()) {
    for (int n : {2, 4, 6}) {
      for (int d : {1, 2, 3}) {
        const int nblocks = is_circulant_family(f) ? n : 2;
        std::vector<ComplexMatrix> blocks;
        for (int i = 0; i < nblocks; ++i) blocks.push_back(random_gaussian_matrix(d, rng));
        const BlockDiagonalization bd = block_diagonalize(spec_of(f, n, blocks));
        CAPTURE(family_name(f));
        CAPTURE(n);
        CAPTURE(d);
        CHECK(unitarity_defect(bd.unitary) < 1e-10);
        CHECK(bd.residual < 1e-9);
      }
    }
  }
}

TEST_CASE("block labels carry the family index origin") {
  CHECK(block_labels(Family::circulant, 3) == std::vector<int>{0, 1, 2});
  CHECK(block_labels(Family::tridiagonal, 3) == std::vector<int>{1, 2, 3});
}
