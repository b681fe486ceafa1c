#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "lil/algebra.hpp"
#include "lil/error.hpp"
#include "lil/lie.hpp"
#include "lil/nest.hpp"
#include "lil/rng.hpp"

#include "oracles.hpp"

#include <cmath>
#include <complex>

using namespace lil;
using namespace lil::testing;

namespace {

const std::complex<double> I_unit(0.0, 1.0);

CMatrix upper2(std::complex<double> a, std::complex<double> b, std::complex<double> d) {
  CMatrix m = CMatrix::Zero(2, 2);
  m(0, 0) = a;
  m(0, 1) = b;
  m(1, 1) = d;
  return m;
}

} // namespace

TEST_CASE("path scaling on a 2x2 example") {
  const AtomPartition atoms{{1, 1}};
  const CMatrix a = upper2(1.0, 2.0, 3.0);

  const CMatrix at_zero = path_point(atoms, a, 0.0);
  CHECK(at_zero(0, 0) == std::complex<double>(1.0));
  CHECK(at_zero(0, 1) == std::complex<double>(0.0));
  CHECK(at_zero(1, 1) == std::complex<double>(3.0));

  CHECK((path_point(atoms, a, 1.0) - a).norm() == 0.0);

  const CMatrix at_i = path_point(atoms, a, I_unit);
  CHECK(at_i(0, 1) == 2.0 * I_unit);
  CHECK(at_i(0, 0) == std::complex<double>(1.0));

  CHECK_THROWS_AS(path_point(atoms, a, std::complex<double>(1.5, 0.0)), Error);

  CMatrix lower = CMatrix::Zero(2, 2);
  lower(1, 0) = 1.0;
  CHECK_THROWS_AS(path_point(atoms, lower, 0.5), Error);
}

TEST_CASE("path entries are polynomials of degree below the atom count") {
  Rng rng(137);
  const AtomPartition atoms{{2, 1, 3, 2}};
  const CMatrix a = random_block_upper(atoms, rng);

  // Extract the graded pieces D_d (d-th block diagonal) and evaluate the
  // polynomial sum at sample points: it must reproduce path exactly.
  std::vector<CMatrix> graded;
  for (std::size_t d = 0; d < atoms.count(); ++d) {
    CMatrix piece = CMatrix::Zero(a.rows(), a.cols());
    for (std::size_t i = 0; i < atoms.total(); ++i) {
      for (std::size_t j = 0; j < atoms.total(); ++j) {
        if (atoms.atom_of(i) <= atoms.atom_of(j) &&
            atoms.atom_of(j) - atoms.atom_of(i) == d) {
          piece(i, j) = a(i, j);
        }
      }
    }
    graded.push_back(piece);
  }
  for (int s = 0; s < 10; ++s) {
    const std::complex<double> z = std::polar(rng.real01(), 2.0 * M_PI * rng.real01());
    CMatrix poly = CMatrix::Zero(a.rows(), a.cols());
    std::complex<double> zp = 1.0;
    for (std::size_t d = 0; d < graded.size(); ++d) {
      poly += graded[d] * zp;
      zp *= z;
    }
    CHECK((poly - path_point(atoms, a, z)).norm() < 1e-14 * std::max(1.0, a.norm()));
  }
}

TEST_CASE("path is multiplicative on block upper matrices") {
  Rng rng(139);
  const AtomPartition atoms{{1, 2, 2}};
  for (int trial = 0; trial < 10; ++trial) {
    const CMatrix a = random_block_upper(atoms, rng);
    const CMatrix b = random_block_upper(atoms, rng);
    const std::complex<double> z = std::polar(rng.real01(), 2.0 * M_PI * rng.real01());
    const CMatrix left = path_point(atoms, a * b, z);
    const CMatrix right = path_point(atoms, a, z) * path_point(atoms, b, z);
    CHECK((left - right).norm() <= 1e-10 * std::max(1.0, left.norm()));
  }
}

TEST_CASE("diagonal unitaries") {
  const AtomPartition atoms{{1, 1}};
  const CMatrix u0 = diagonal_unitary(atoms, 0.0);
  CHECK((u0 - CMatrix::Identity(2, 2)).norm() == 0.0);

  const CMatrix upi = diagonal_unitary(atoms, M_PI);
  CHECK(std::abs(upi(0, 0) - std::complex<double>(-1.0)) < 1e-15);
  CHECK(std::abs(upi(1, 1) - std::complex<double>(1.0)) < 1e-15);

  Rng rng(149);
  const AtomPartition mixed{{2, 3, 1}};
  for (int trial = 0; trial < 5; ++trial) {
    const double theta = 6.28 * rng.real01();
    const CMatrix u = diagonal_unitary(mixed, theta);
    CHECK((u.adjoint() * u - CMatrix::Identity(6, 6)).norm() < 1e-12);
  }
}

TEST_CASE("boundary conjugation identity") {
  const AtomPartition atoms{{1, 1}};
  CHECK(boundary_conjugation_residual(atoms, upper2(1.0, 2.0, 3.0), 0.0) == 0.0);

  Rng rng(151);
  const AtomPartition big{{2, 3, 1, 4, 2, 1, 3, 2, 1, 1}}; // total 20
  for (int trial = 0; trial < 6; ++trial) {
    const CMatrix a = random_block_upper(big, rng);
    CHECK(boundary_conjugation_residual(big, a, 1.3) <= 1e-10 * a.norm());
  }

  // Diagonal matrices commute with the unitaries.
  CMatrix diag = CMatrix::Zero(2, 2);
  diag(0, 0) = std::complex<double>(2.0, 1.0);
  diag(1, 1) = std::complex<double>(-1.0, 0.5);
  for (double theta : {0.1, 1.0, 2.5}) {
    CHECK(boundary_conjugation_residual(atoms, diag, theta) < 1e-14);
  }
}

TEST_CASE("norm bound over the disk") {
  const AtomPartition atoms{{1, 1}};

  // Diagonal: the norm is constant over the disk.
  CMatrix diag = CMatrix::Zero(2, 2);
  diag(0, 0) = 3.0;
  diag(1, 1) = 1.0;
  const NormBoundReport rd = norm_bound_check(atoms, diag, 60);
  CHECK(rd.ok());
  CHECK(rd.max_interior_excess <= 0.0 + 1e-12);

  // A single off-diagonal unit scales like |z|.
  CMatrix e12 = CMatrix::Zero(2, 2);
  e12(0, 1) = 1.0;
  const NormBoundReport re = norm_bound_check(atoms, e12, 60);
  CHECK(re.ok());
  CHECK(spectral_norm(path_point(atoms, e12, std::complex<double>(0.5, 0.0))) ==
        doctest::Approx(0.5));

  Rng rng(157);
  const AtomPartition mixed{{2, 1, 3, 2, 1, 1}}; // total 10
  for (int trial = 0; trial < 4; ++trial) {
    const CMatrix a = random_block_upper(mixed, rng);
    CHECK(norm_bound_check(mixed, a, 200).ok());
  }
}

TEST_CASE("inverse path identity") {
  const AtomPartition atoms{{1, 1}};
  const CMatrix eye = CMatrix::Identity(2, 2);
  CHECK(inverse_path_check(atoms, eye, eye, 40).ok());

  // [[1,1],[0,1]] and [[1,-1],[0,1]]: the z-terms cancel exactly.
  const InversePathReport rp =
      inverse_path_check(atoms, upper2(1.0, 1.0, 1.0), upper2(1.0, -1.0, 1.0), 60);
  CHECK(rp.ok());
  CHECK(rp.max_residual < 1e-14);

  Rng rng(163);
  const AtomPartition eight{{1, 2, 1, 1, 2, 1}}; // total 8
  for (int trial = 0; trial < 5; ++trial) {
    const CMatrix a = random_block_upper(eight, rng, nullptr, /*make_invertible=*/true);
    CMatrix b = a.inverse();
    for (std::size_t i = 0; i < 8; ++i) {
      for (std::size_t j = 0; j < 8; ++j) {
        if (eight.atom_of(i) > eight.atom_of(j)) b(i, j) = 0.0;
      }
    }
    const InversePathReport r = inverse_path_check(eight, a, b, 100);
    CHECK(r.ok());
    CHECK(r.max_residual <= 1e-8);
  }

  CHECK_THROWS_AS(inverse_path_check(atoms, upper2(1.0, 1.0, 1.0), eye, 10), Error);
}

TEST_CASE("atom partitions from patterns") {
  const Algebra t3(Pattern::upper_triangular(3));
  CHECK(atoms_of_pattern(t3).sizes == std::vector<std::size_t>{1, 1, 1});

  const Algebra blocky(Pattern::from_pairs(4, {{0, 1}, {1, 0}, {0, 2}, {1, 2}, {0, 3}, {1, 3}}));
  CHECK(atoms_of_pattern(blocky).sizes == std::vector<std::size_t>{2, 1, 1});

  // Patterns needing a reindex are rejected.
  const Algebra reversed(Pattern::from_pairs(2, {{1, 0}}));
  CHECK_THROWS_AS(atoms_of_pattern(reversed), Error);
}

TEST_CASE("csl conjugation keeps lie ideals close to themselves") {
  // CSL inside the 3-atom nest: (1,3) and (2,3) present, (1,2) absent.
  const Algebra mask(Pattern::from_pairs(3, {{0, 2}, {1, 2}}));
  const AtomPartition atoms = atoms_of_pattern(mask);

  Rng rng(167);
  for (int trial = 0; trial < 3; ++trial) {
    const Subspace L = lie_generate(mask, {random_pattern_element(rng, mask)});
    Rng inner(200 + trial);
    const CslDriftReport r = csl_conjugation_check(mask, atoms, L, 40, inner);
    CHECK(r.ok());
  }

  // Full nest algebra as the trivial CSL.
  const Algebra nest(Pattern::upper_triangular(4));
  Rng inner(3);
  const Subspace L = lie_generate(nest, {random_pattern_element(rng, nest)});
  CHECK(csl_conjugation_check(nest, atoms_of_pattern(nest), L, 40, inner).ok());
}
