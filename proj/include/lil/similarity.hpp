#ifndef LIL_SIMILARITY_HPP
#define LIL_SIMILARITY_HPP

#include "lil/algebra.hpp"
#include "lil/lie.hpp"
#include "lil/rng.hpp"
#include "lil/subspace.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace lil {

/// t = d(1+n) with d invertible in the diagonal part and n strictly
/// block-off-diagonal, hence nilpotent. nilpotence_order is the k with
/// n^k != 0 and n^{k+1} = 0 (0 for n = 0).
struct Factorization {
  Mat d;
  Mat n;
  std::size_t nilpotence_order = 0;
};

/// Largest k with m^k != 0, or nullopt when m is not nilpotent.
std::optional<std::size_t> nilpotence_order(const Mat& m);

/// Exact inverse inside the algebra: invert the diagonal blocks, then sum
/// the finite geometric series of the nilpotent rest. Throws
/// Status::Singular when a diagonal block is singular (equivalently, t is
/// not invertible).
Mat invert_in_algebra(const Algebra& a, const Mat& t);

Factorization factor_dn(const Algebra& a, const Mat& t);

/// t^{-1} x t, exact.
Mat conjugate(const Algebra& a, const Mat& t, const Mat& x);

/// x - [n,x] + n[n,x] - n^2[n,x] + ... +- n^k[n,x] for nilpotent n. Must
/// agree with conjugate(I+n, x); that equality is a test target, not an
/// assumption of this routine.
Mat telescoping_conjugation(const Algebra& a, const Mat& n, const Mat& x);

/// Random invertible drawn as d(1+n): diagonal blocks are unit-triangular
/// products with determinant +-1..+-4, n has integer entries in [-2,2] on
/// the strict block pairs. Invertible by construction, inverse exact.
struct InvertibleSample {
  Mat t;
  Mat t_inv;
  Mat d;
  Mat d_inv;
  Mat n;
  std::size_t nilpotence = 0;
};
InvertibleSample random_invertible(const Algebra& a, Rng& rng);

/// Random element supported on the pattern, entries in [lo, hi].
Mat random_element(const Algebra& a, Rng& rng, long lo = -2, long hi = 2);

struct SimFailure {
  int trial;
  std::size_t basis_index;
  const char* stage; // "conjugation", "diagonal", "nilpotent"
};

struct SimReport {
  int trials = 0;
  std::uint64_t seed = 0;
  bool split_checked = false;
  std::vector<SimFailure> failures; // empty unless the theory is wrong
  bool ok() const { return failures.empty(); }
};

/// Conjugates every basis element of the Lie ideal by `trials` random
/// invertibles and verifies membership. With split_checks, additionally
/// verifies the two halves separately: diagonal conjugation fixes L, and
/// the nilpotent tail n^j[n,x] stays in the off-diagonal ideal K.
/// Throws Status::NotLieIdeal when the input is not a Lie ideal.
SimReport check_similarity_invariance(const Algebra& a, const Subspace& lie_ideal,
                                      int trials, std::uint64_t seed,
                                      bool split_checks = true);

/// Search for a conjugation escaping an arbitrary subspace; used to confirm
/// that non-Lie-ideal subspaces are not similarity invariant.
struct ViolationSearch {
  bool found = false;
  int trials_used = 0;
  std::optional<std::size_t> basis_index;
  std::optional<Mat> witness_t;
};
ViolationSearch find_similarity_violation(const Algebra& a, const Subspace& s,
                                          int trials, std::uint64_t seed);

/// Derivative recursion y_0 = x, y_{j+1} = y_j a - a y_j: every iterate must
/// stay in the Lie ideal generated by x. For nilpotent a the exponentials
/// are finite sums, so e^{-a} x e^{a} is computed exactly and compared with
/// the series sum_j y_j / j!. require_exact rejects non-nilpotent a.
struct ExpReport {
  int iterates_checked = 0;
  bool iterates_in_ideal = false;
  bool exact_mode = false;
  bool exponential_matches_series = false;
  bool conjugate_in_ideal = false;
  bool ok() const {
    return iterates_in_ideal && (!exact_mode || (exponential_matches_series && conjugate_in_ideal));
  }
};
ExpReport exp_conjugation_check(const Algebra& a, const Mat& elem, const Mat& x,
                                int truncation_order, bool require_exact = false);

} // namespace lil

#endif
