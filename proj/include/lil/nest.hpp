#ifndef LIL_NEST_HPP
#define LIL_NEST_HPP

#include "lil/algebra.hpp"
#include "lil/rng.hpp"
#include "lil/subspace.hpp"

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <vector>

namespace lil {

using CMatrix = Eigen::MatrixXcd;

/// Consecutive atom sizes of a finite nest truncation. Atom k occupies the
/// index range [offset(k), offset(k) + size[k]).
struct AtomPartition {
  std::vector<std::size_t> sizes;

  std::size_t total() const;
  std::size_t offset(std::size_t k) const;
  std::size_t atom_of(std::size_t index) const;
  std::size_t count() const { return sizes.size(); }
};

/// Entries strictly below the block diagonal must vanish exactly.
bool is_block_upper(const AtomPartition& atoms, const CMatrix& a);

/// Grading scale: block (i, j) picks up the factor z^(j-i). path(A, 1) = A.
/// Rejects |z| > 1 + 1e-12 (the norm bound only covers the closed disk) and
/// matrices that are not block upper triangular.
CMatrix path_point(const AtomPartition& atoms, const CMatrix& a, std::complex<double> z);

/// Block-diagonal unitary whose k-th atom carries e^{i k theta} (1-based k).
CMatrix diagonal_unitary(const AtomPartition& atoms, double theta);

/// || U(theta)* A U(theta) - path(A, e^{i theta}) ||_F — pure rounding, the
/// identity is exact in the algebra.
double boundary_conjugation_residual(const AtomPartition& atoms, const CMatrix& a,
                                     double theta);

double spectral_norm(const CMatrix& a);

/// Samples the closed disk on a radial/angular grid plus the boundary circle:
/// the spectral norm of path(A, z) never exceeds that of A (slack 1e-9), and
/// on the boundary it equals it (within 1e-9).
struct NormBoundReport {
  int samples = 0;
  double max_interior_excess = 0.0;   // max ||A(z)|| - ||A|| over the grid
  double max_boundary_deviation = 0.0;
  int violations = 0;
  bool ok() const { return violations == 0; }
};
NormBoundReport norm_bound_check(const AtomPartition& atoms, const CMatrix& a, int samples);

/// path(A, z) path(B, z) = I across the disk when B is the inverse of A.
/// The tolerance scales with the condition number of A. A bad inverse is an
/// input error (Status::BadArgument), not a theorem failure.
struct InversePathReport {
  int samples = 0;
  double max_residual = 0.0;
  double tolerance = 0.0;
  double condition = 0.0;
  bool ok() const { return max_residual <= tolerance; }
};
InversePathReport inverse_path_check(const AtomPartition& atoms, const CMatrix& a,
                                     const CMatrix& b, int samples);

/// Random block-upper matrix with entries in the complex unit square; with
/// `mask`, only pattern-supported entries are filled. make_invertible shifts
/// the diagonal to keep the matrix comfortably regular.
CMatrix random_block_upper(const AtomPartition& atoms, Rng& rng,
                           const Pattern* mask = nullptr, bool make_invertible = false);

/// Finite-scale similarity drift: conjugate a Lie ideal of the CSL algebra
/// (imported from exact arithmetic) by path points of a random invertible;
/// every image must stay within least-squares distance 1e-8 of the ideal.
struct CslDriftReport {
  int samples = 0;
  double max_residual = 0.0;
  double tolerance = 1e-8;
  bool ok() const { return max_residual <= tolerance; }
};
CslDriftReport csl_conjugation_check(const Algebra& mask, const AtomPartition& atoms,
                                     const Subspace& lie_ideal, int samples, Rng& rng);

/// Atom partition given by the block sizes of a pattern in canonical order.
/// The pattern must already be block upper triangular as written (the
/// canonical order must be the identity).
AtomPartition atoms_of_pattern(const Algebra& a);

} // namespace lil

#endif
