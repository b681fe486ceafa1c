#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "lil/algebra.hpp"
#include "lil/error.hpp"
#include "lil/rng.hpp"

#include "oracles.hpp"

#include <string>

using namespace lil;
using namespace lil::testing;

namespace {

// 4x4 pattern with one 2x2 block: diagonal, (1,2),(2,1) mutual, plus
// (1,3),(2,3). Blocks {1,2},{3},{4}; poset {1,2} -> {3}.
Pattern two_block_pattern() {
  return Pattern::from_pairs(4, {{0, 1}, {1, 0}, {0, 2}, {1, 2}});
}

} // namespace

TEST_CASE("pattern file parsing") {
  const std::string text = "# upper triangular\nn 3\n***\n.**\n..*\n";
  const Pattern p = Pattern::parse(text);
  CHECK(p == Pattern::upper_triangular(3));
  CHECK(Pattern::parse(p.format()) == p);

  CHECK_THROWS_AS(Pattern::parse("n 2\n**\n"), Error);      // missing row
  CHECK_THROWS_AS(Pattern::parse("n 2\n**\n*x\n"), Error);  // bad character
  CHECK_THROWS_AS(Pattern::parse("**\n**\n"), Error);       // missing header

  // Whitespace inside rows is ignored.
  CHECK(Pattern::parse("n 2\n* *\n. *\n") == Pattern::upper_triangular(2));
}

TEST_CASE("validation accepts chains and rejects non-algebras") {
  const Algebra t3(Pattern::upper_triangular(3));
  CHECK(t3.blocks().block_count() == 3);
  for (const auto& blk : t3.blocks().blocks) CHECK(blk.size() == 1);
  CHECK(t3.blocks().poset ==
        std::vector<std::pair<std::size_t, std::size_t>>{{0, 1}, {0, 2}, {1, 2}});

  // e12 e23 = e13 is missing: not closed under multiplication.
  const Pattern bad = Pattern::from_pairs(3, {{0, 1}, {1, 2}});
  CHECK_THROWS_WITH_AS(Algebra{bad},
                       "pattern is not transitive: (1,2) and (2,3) present but "
                       "(1,3) missing",
                       Error);

  const Pattern hole = Pattern::parse("n 2\n**\n..\n");
  CHECK_THROWS_WITH_AS(Algebra{hole}, "pattern is not reflexive: missing (2,2)", Error);
}

TEST_CASE("block discovery on the two-block example") {
  const Algebra a(two_block_pattern());
  const auto& bs = a.blocks();
  REQUIRE(bs.block_count() == 3);
  CHECK(bs.blocks[0] == std::vector<std::size_t>{0, 1});
  CHECK(bs.blocks[1] == std::vector<std::size_t>{2});
  CHECK(bs.blocks[2] == std::vector<std::size_t>{3});
  CHECK(bs.poset == std::vector<std::pair<std::size_t, std::size_t>>{{0, 1}});

  const auto [diag, off] = a.diag_offdiag_split();
  CHECK(diag.dim() == 6);
  CHECK(off.dim() == 2);
}

TEST_CASE("canonical order renders the pattern block upper triangular") {
  // Reversed chain: entries only at and below the diagonal.
  const Pattern reversed = Pattern::from_pairs(3, {{1, 0}, {2, 0}, {2, 1}});
  const Algebra a(reversed);
  const auto& bs = a.blocks();
  CHECK(bs.order == std::vector<std::size_t>{2, 1, 0});

  // After permuting with the canonical order, nothing sits strictly below
  // the block diagonal.
  for (std::size_t pi_ = 0; pi_ < 3; ++pi_) {
    for (std::size_t pj = 0; pj < pi_; ++pj) {
      const std::size_t i = bs.order[pi_];
      const std::size_t j = bs.order[pj];
      if (bs.block_of[i] != bs.block_of[j]) CHECK_FALSE(a.pattern().has(i, j));
    }
  }
}

TEST_CASE("canonical order breaks ties by smallest original index") {
  // Two incomparable blocks {1} and {2}, then {3} above both.
  const Pattern p = Pattern::from_pairs(3, {{0, 2}, {1, 2}});
  const Algebra a(p);
  CHECK(a.blocks().blocks[0] == std::vector<std::size_t>{0});
  CHECK(a.blocks().blocks[1] == std::vector<std::size_t>{1});
  CHECK(a.blocks().blocks[2] == std::vector<std::size_t>{2});
}

TEST_CASE("matrix units span the algebra") {
  CHECK(matrix_units(Pattern::diagonal(2)).size() == 2);
  CHECK(matrix_units(Pattern::upper_triangular(2)).size() == 3);
  CHECK(matrix_units(Pattern::full(3)).size() == 9);

  const Algebra a(two_block_pattern());
  CHECK(a.dim() == 8);
  CHECK(a.algebra_subspace().dim() == 8);
}

TEST_CASE("diagonal split for small algebras") {
  const Algebra t3(Pattern::upper_triangular(3));
  const auto [e3, s3] = t3.diag_offdiag_split();
  CHECK(e3.dim() == 3);
  CHECK(s3.dim() == 3);

  const Algebra m2(Pattern::full(2));
  const auto [e2, s2] = m2.diag_offdiag_split();
  CHECK(e2.dim() == 4);
  CHECK(s2.dim() == 0);

  CHECK(intersect(e3, s3).dim() == 0);
  CHECK(sum(e3, s3) == t3.algebra_subspace());
}

TEST_CASE("conditional expectation") {
  const Algebra t2(Pattern::upper_triangular(2));
  Mat x(2, 2);
  x.at(0, 0) = 5;
  x.at(0, 1) = 7;
  x.at(1, 1) = -2;
  Mat expect(2, 2);
  expect.at(0, 0) = 5;
  expect.at(1, 1) = -2;
  CHECK(t2.pi(x) == expect);
  CHECK(t2.pi(t2.pi(x)) == t2.pi(x));

  // Two-block example: the 2x2 corner survives, the (1,3),(2,3) entries die.
  const Algebra a(two_block_pattern());
  Mat y(4, 4);
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) y.at(i, j) = Rational(long(1 + i + 4 * j));
  }
  const Mat py = a.pi(y);
  CHECK(py.at(0, 1) == y.at(0, 1));
  CHECK(py.at(1, 0) == y.at(1, 0));
  CHECK(py.at(2, 2) == y.at(2, 2));
  CHECK(is_zero(py.at(0, 2)));
  CHECK(is_zero(py.at(1, 2)));
  CHECK(is_zero(py.at(0, 3)));
}

TEST_CASE("pi is linear idempotent with range E and kernel S") {
  Rng rng(41);
  const Algebra a(two_block_pattern());
  const auto [diag, off] = a.diag_offdiag_split();

  for (int trial = 0; trial < 20; ++trial) {
    const Mat x = random_pattern_element(rng, a);
    const Mat px = a.pi(x);
    CHECK(a.pi(px) == px);
    CHECK(diag.contains(px.vectorize()));
    CHECK(off.contains((x - px).vectorize()));

    const Mat y = random_pattern_element(rng, a);
    const Rational c = random_rational(rng);
    CHECK(a.pi(x + y * c) == px + a.pi(y) * c);

    // pi(e x f) = e pi(x) f for e, f in the diagonal part.
    const Mat e = a.pi(random_pattern_element(rng, a));
    const Mat f = a.pi(random_pattern_element(rng, a));
    CHECK(a.pi(e * x * f) == e * px * f);
  }
}

TEST_CASE("bracket and product closure on random elements") {
  Rng rng(43);
  for (const Pattern& p : {Pattern::upper_triangular(4), two_block_pattern(), Pattern::full(3)}) {
    const Algebra a(p);
    for (int trial = 0; trial < 15; ++trial) {
      const Mat x = random_pattern_element(rng, a);
      const Mat y = random_pattern_element(rng, a);
      CHECK(a.supports(x * y));
      CHECK(a.supports(bracket(x, y)));
    }
  }
}

TEST_CASE("commutators vanish under pi for triangular patterns") {
  Rng rng(47);
  const Algebra t4(Pattern::upper_triangular(4));
  for (int trial = 0; trial < 15; ++trial) {
    const Mat x = random_pattern_element(rng, t4);
    const Mat y = random_pattern_element(rng, t4);
    CHECK(t4.pi(bracket(x, y)).is_zero());
  }

  // For block patterns only the trace of the compression dies.
  const Algebra a(two_block_pattern());
  for (int trial = 0; trial < 15; ++trial) {
    const Mat x = random_pattern_element(rng, a);
    const Mat y = random_pattern_element(rng, a);
    CHECK(is_zero(a.pi(bracket(x, y)).trace()));
  }
}

TEST_CASE("unit bracket table") {
  const Algebra t2(Pattern::upper_triangular(2));
  const Mat e11 = t2.unit(0, 0);
  const Mat e12 = t2.unit(0, 1);
  CHECK(bracket(e11, e12) == e12);
}
