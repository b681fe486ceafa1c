#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "lil/algebra.hpp"
#include "lil/error.hpp"
#include "lil/lie.hpp"
#include "lil/similarity.hpp"

#include "oracles.hpp"

using namespace lil;
using namespace lil::testing;

namespace {

std::vector<Rational> unit_vec(std::size_t n, std::size_t i, std::size_t j) {
  std::vector<Rational> v(n * n, Rational(0));
  v[i * n + j] = 1;
  return v;
}

Mat strict_part(const Algebra& a, const Mat& x) { return x - a.pi(x); }

} // namespace

TEST_CASE("inversion inside the algebra") {
  const Algebra t2(Pattern::upper_triangular(2));
  CHECK(invert_in_algebra(t2, Mat::identity(2)) == Mat::identity(2));

  Mat t(2, 2);
  t.at(0, 0) = 2;
  t.at(0, 1) = 3;
  t.at(1, 1) = 4;
  Mat expected(2, 2);
  expected.at(0, 0) = Rational(1, 2);
  expected.at(0, 1) = Rational(-3, 8);
  expected.at(1, 1) = Rational(1, 4);
  CHECK(invert_in_algebra(t2, t) == expected);

  Mat singular(2, 2);
  singular.at(0, 0) = 1;
  singular.at(0, 1) = 1;
  CHECK_THROWS_AS(invert_in_algebra(t2, singular), Error);

  // The inverse of an element stays supported on the pattern.
  Rng rng(89);
  const Algebra a(Pattern::from_pairs(4, {{0, 1}, {1, 0}, {0, 2}, {1, 2}, {0, 3}, {1, 3}}));
  for (int trial = 0; trial < 10; ++trial) {
    const InvertibleSample s = random_invertible(a, rng);
    const Mat inv = invert_in_algebra(a, s.t);
    CHECK(a.supports(inv));
    CHECK(inv == s.t_inv);
    CHECK((s.t * inv) == Mat::identity(4));
    CHECK((inv * s.t) == Mat::identity(4));
  }
}

TEST_CASE("factorization t = d(1 + n)") {
  const Algebra t2(Pattern::upper_triangular(2));
  Mat t(2, 2);
  t.at(0, 0) = 2;
  t.at(0, 1) = 3;
  t.at(1, 1) = 4;
  const Factorization f = factor_dn(t2, t);
  CHECK(f.d == t2.pi(t));
  CHECK(f.n.at(0, 1) == Rational(3, 2));
  CHECK(f.nilpotence_order == 1);
  CHECK(f.d * (Mat::identity(2) + f.n) == t);

  Mat diag(2, 2);
  diag.at(0, 0) = 5;
  diag.at(1, 1) = -1;
  const Factorization fd = factor_dn(t2, diag);
  CHECK(fd.n.is_zero());
  CHECK(fd.nilpotence_order == 0);

  const Algebra t3(Pattern::upper_triangular(3));
  Mat u = Mat::identity(3);
  u.at(0, 1) = u.at(1, 2) = u.at(0, 2) = 1;
  const Factorization fu = factor_dn(t3, u);
  CHECK(fu.d == Mat::identity(3));
  CHECK(fu.nilpotence_order == 2);
  CHECK((fu.n * fu.n).at(0, 2) == 1);
  CHECK((fu.n * fu.n * fu.n).is_zero());
}

TEST_CASE("factorization reconstructs random invertibles") {
  Rng rng(97);
  for (const Pattern& p : {Pattern::upper_triangular(3), Pattern::full(3),
                           Pattern::from_pairs(4, {{0, 1}, {1, 0}, {0, 2}, {1, 2}})}) {
    const Algebra a(p);
    for (int trial = 0; trial < 10; ++trial) {
      const InvertibleSample s = random_invertible(a, rng);
      const Factorization f = factor_dn(a, s.t);
      CHECK(f.d * (Mat::identity(a.n()) + f.n) == s.t);
      CHECK(a.pi(f.n).is_zero());
    }
  }
}

TEST_CASE("conjugation") {
  const Algebra t2(Pattern::upper_triangular(2));
  const Mat e11 = t2.unit(0, 0);
  CHECK(conjugate(t2, Mat::identity(2), e11) == e11);

  Mat t = Mat::identity(2);
  t.at(0, 1) = 1;
  const Mat conj = conjugate(t2, t, e11);
  Mat expected = e11;
  expected.at(0, 1) = 1;
  CHECK(conj == expected); // (1 - e12) e11 (1 + e12) = e11 + e12

  Mat d(2, 2);
  d.at(0, 0) = 3;
  d.at(1, 1) = 7;
  const Mat e12 = t2.unit(0, 1);
  CHECK(conjugate(t2, d, e12) == e12 * Rational(7, 3));
}

TEST_CASE("telescoping conjugation equals the inverse route") {
  const Algebra t2(Pattern::upper_triangular(2));
  const Mat e11 = t2.unit(0, 0);
  const Mat e12 = t2.unit(0, 1);

  CHECK(telescoping_conjugation(t2, Mat(2, 2), e11) == e11);
  CHECK(telescoping_conjugation(t2, e12, e11) == e11 + e12);

  const Algebra t3(Pattern::upper_triangular(3));
  const Mat n = t3.unit(0, 1) + t3.unit(1, 2);
  const Mat x = t3.unit(1, 1);
  CHECK(telescoping_conjugation(t3, n, x) ==
        conjugate(t3, Mat::identity(3) + n, x));

  CHECK_THROWS_AS(telescoping_conjugation(t2, e11, e12), Error); // not nilpotent
}

TEST_CASE("two-route equality on random nilpotents") {
  Rng rng(101);
  for (const Pattern& p : {Pattern::upper_triangular(3), Pattern::upper_triangular(4),
                           Pattern::from_pairs(4, {{0, 1}, {1, 0}, {0, 2}, {1, 2}}),
                           Pattern::full(3)}) {
    const Algebra a(p);
    for (int trial = 0; trial < 25; ++trial) {
      const Mat n = strict_part(a, random_element(a, rng));
      const Mat x = random_element(a, rng);
      CHECK(telescoping_conjugation(a, n, x) ==
            conjugate(a, Mat::identity(a.n()) + n, x));
    }
  }
}

TEST_CASE("similarity invariance of lie ideals") {
  const Algebra t2(Pattern::upper_triangular(2));

  // Zero and the whole algebra are trivially invariant.
  CHECK(check_similarity_invariance(t2, Subspace::zero(4), 25, 7).ok());
  CHECK(check_similarity_invariance(t2, t2.algebra_subspace(), 25, 7).ok());

  // span{e12} is invariant: conjugation scales it by d22/d11.
  const Subspace e12 = Subspace::span({unit_vec(2, 0, 1)}, 4);
  const SimReport r = check_similarity_invariance(t2, e12, 50, 11);
  CHECK(r.ok());
  CHECK(r.split_checked);
  CHECK(r.trials == 50);

  // span{e11} is not a Lie ideal; the check refuses it.
  CHECK_THROWS_AS(
      check_similarity_invariance(t2, Subspace::span({unit_vec(2, 0, 0)}, 4), 10, 1),
      Error);
}

TEST_CASE("generated ideals survive conjugation across patterns") {
  Rng rng(103);
  for (const Pattern& p : {Pattern::upper_triangular(4), Pattern::full(3),
                           Pattern::from_pairs(4, {{0, 1}, {1, 0}, {0, 2}, {1, 2}})}) {
    const Algebra a(p);
    for (int trial = 0; trial < 4; ++trial) {
      const Subspace L = lie_generate(a, {random_pattern_element(rng, a)});
      CHECK(check_similarity_invariance(a, L, 40, 1000 + trial).ok());
    }
  }
}

TEST_CASE("non-lie subspaces betray themselves under conjugation") {
  const Algebra t2(Pattern::upper_triangular(2));
  const ViolationSearch v =
      find_similarity_violation(t2, Subspace::span({unit_vec(2, 0, 0)}, 4), 200, 5);
  CHECK(v.found);
  CHECK(v.trials_used >= 1);
  REQUIRE(v.witness_t.has_value());

  // Confirm the witness: conjugation by it really escapes.
  const Mat x = Mat::from_vector(2, 2, unit_vec(2, 0, 0));
  const Mat moved = conjugate(t2, *v.witness_t, x);
  CHECK_FALSE(Subspace::span({unit_vec(2, 0, 0)}, 4).contains(moved.vectorize()));

  // A Lie ideal never yields a violation.
  const ViolationSearch none =
      find_similarity_violation(t2, Subspace::span({unit_vec(2, 0, 1)}, 4), 60, 5);
  CHECK_FALSE(none.found);
}

TEST_CASE("derivative recursion and nilpotent exponentials") {
  const Algebra t2(Pattern::upper_triangular(2));
  const Mat e11 = t2.unit(0, 0);
  const Mat e12 = t2.unit(0, 1);

  const ExpReport r = exp_conjugation_check(t2, e12, e11, 6);
  CHECK(r.ok());
  CHECK(r.exact_mode);
  CHECK(r.exponential_matches_series);
  CHECK(r.conjugate_in_ideal);

  // a = 0 fixes everything.
  const ExpReport rz = exp_conjugation_check(t2, Mat(2, 2), e11, 4);
  CHECK(rz.ok());
  CHECK(rz.exact_mode);

  // e13 commutes with e12 + e23 inside T_3, so conjugation fixes it.
  const Algebra t3(Pattern::upper_triangular(3));
  const Mat a = t3.unit(0, 1) + t3.unit(1, 2);
  const Mat x = t3.unit(0, 2);
  const ExpReport rf = exp_conjugation_check(t3, a, x, 6);
  CHECK(rf.ok());
  Mat ebr = x * a - a * x;
  CHECK(ebr.is_zero());

  // Non-nilpotent argument: derivative recursion still runs, exact mode off;
  // requesting exactness is an error.
  const ExpReport rn = exp_conjugation_check(t2, e11, e12, 6);
  CHECK(rn.iterates_in_ideal);
  CHECK_FALSE(rn.exact_mode);
  CHECK_THROWS_AS(exp_conjugation_check(t2, e11, e12, 6, /*require_exact=*/true), Error);
}

TEST_CASE("exponential conjugation stays in the generated ideal") {
  Rng rng(107);
  for (const Pattern& p : {Pattern::upper_triangular(3), Pattern::full(2),
                           Pattern::from_pairs(4, {{0, 1}, {1, 0}, {0, 2}, {1, 2}})}) {
    const Algebra alg(p);
    for (int trial = 0; trial < 8; ++trial) {
      const Mat a = strict_part(alg, random_element(alg, rng)); // nilpotent
      const Mat x = random_element(alg, rng);
      const ExpReport r = exp_conjugation_check(alg, a, x, 8);
      CHECK(r.ok());
    }
  }
}
