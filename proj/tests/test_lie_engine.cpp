#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "lil/algebra.hpp"
#include "lil/error.hpp"
#include "lil/ideal.hpp"
#include "lil/lie.hpp"
#include "lil/rng.hpp"

#include "oracles.hpp"

#include <algorithm>
#include <set>

using namespace lil;
using namespace lil::testing;

namespace {

using Pairs = std::vector<std::pair<std::size_t, std::size_t>>;

std::vector<Rational> unit_vec(std::size_t n, std::size_t i, std::size_t j) {
  std::vector<Rational> v(n * n, Rational(0));
  v[i * n + j] = 1;
  return v;
}

Subspace trace_zero_m2() {
  std::vector<Rational> diff(4, Rational(0));
  diff[0] = 1;
  diff[3] = -1;
  return Subspace::span({unit_vec(2, 0, 1), unit_vec(2, 1, 0), diff}, 4);
}

// Kernel of the linear map given by stacked rows, via rref back-substitution.
// Test-local; shares no code with Subspace::intersect.
std::vector<std::vector<Rational>> kernel_of(const Mat& m) {
  const Mat r = rref(m);
  const std::size_t rows = r.rows();
  const std::size_t cols = r.cols();
  std::vector<std::size_t> pivot_cols;
  std::vector<bool> is_pivot(cols, false);
  for (std::size_t i = 0; i < rows; ++i) {
    std::size_t c = 0;
    while (c < cols && is_zero(r.at(i, c))) ++c;
    if (c == cols) break;
    pivot_cols.push_back(c);
    is_pivot[c] = true;
  }
  std::vector<std::vector<Rational>> kernel;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    std::vector<Rational> v(cols, Rational(0));
    v[f] = 1;
    for (std::size_t i = 0; i < pivot_cols.size(); ++i) v[pivot_cols[i]] = -r.at(i, f);
    kernel.push_back(std::move(v));
  }
  return kernel;
}

} // namespace

TEST_CASE("lie ideal verdicts on the standard examples") {
  const Algebra m2(Pattern::full(2));
  CHECK(is_lie_ideal(m2, trace_zero_m2()).ok);
  CHECK(is_lie_ideal(m2, Subspace::zero(4)).ok);
  CHECK(is_lie_ideal(m2, m2.algebra_subspace()).ok);

  const Algebra t2(Pattern::upper_triangular(2));
  const auto check = is_lie_ideal(t2, Subspace::span({unit_vec(2, 0, 0)}, 4));
  REQUIRE_FALSE(check.ok);
  CHECK(check.witness->unit == std::make_pair(std::size_t(0), std::size_t(1)));
}

TEST_CASE("lie generation") {
  const Algebra t2(Pattern::upper_triangular(2));
  CHECK(lie_generate(t2, {}) == Subspace::zero(4));
  CHECK(lie_generate(t2, {t2.unit(0, 1)}) == Subspace::span({unit_vec(2, 0, 1)}, 4));

  // e11 - e22 generates the trace-zero Lie ideal of the full algebra.
  const Algebra m2(Pattern::full(2));
  Mat diff(2, 2);
  diff.at(0, 0) = 1;
  diff.at(1, 1) = -1;
  const Subspace gen = lie_generate(m2, {diff});
  CHECK(gen.dim() == 3);
  CHECK(gen == trace_zero_m2());

  CHECK_THROWS_AS(lie_generate(t2, {m2.unit(1, 0)}), Error); // not supported
  CHECK(lie_generate(t2, {m2.unit(1, 0)}, /*ambient=*/true).dim() >= 1);
}

TEST_CASE("generated subspaces are always lie ideals") {
  Rng rng(61);
  for (const Pattern& p : {Pattern::upper_triangular(3), Pattern::full(3),
                           Pattern::from_pairs(4, {{0, 1}, {1, 0}, {0, 2}, {1, 2}})}) {
    const Algebra a(p);
    for (int trial = 0; trial < 10; ++trial) {
      std::vector<Mat> gens;
      for (std::size_t g = 0, count = 1 + rng.index(2); g < count; ++g) {
        gens.push_back(random_pattern_element(rng, a));
      }
      const Subspace L = lie_generate(a, gens);
      CHECK(is_lie_ideal(a, L).ok);
      for (const auto& g : gens) CHECK(L.contains(g.vectorize()));
    }
  }
}

TEST_CASE("decomposition on worked examples") {
  const Algebra t2(Pattern::upper_triangular(2));
  std::vector<Rational> id(4, Rational(0));
  id[0] = id[3] = 1;
  const Subspace L = Subspace::span({id, unit_vec(2, 0, 1)}, 4);
  const Decomposition dec = decompose(t2, L);
  CHECK(dec.diag == Subspace::span({id}, 4));
  CHECK(dec.offdiag == Subspace::span({unit_vec(2, 0, 1)}, 4));
  CHECK(dec.k_blocks.pairs == Pairs{{0, 1}});

  const Algebra m2(Pattern::full(2));
  const Decomposition dec2 = decompose(m2, trace_zero_m2());
  CHECK(dec2.diag == trace_zero_m2());
  CHECK(dec2.offdiag.dim() == 0);

  const Algebra t3(Pattern::upper_triangular(3));
  const Decomposition dec3 = decompose(t3, t3.algebra_subspace());
  CHECK(dec3.diag.dim() == 3);
  CHECK(dec3.offdiag.dim() == 3);
  CHECK(dec3.k_blocks.pairs == Pairs{{0, 1}, {0, 2}, {1, 2}});

  CHECK_THROWS_AS(decompose(t2, Subspace::span({unit_vec(2, 0, 0)}, 4)), Error);
}

TEST_CASE("decomposition of generated ideals, with ideal oracle") {
  Rng rng(67);
  for (const Pattern& p : {Pattern::upper_triangular(4), Pattern::full(3),
                           Pattern::from_pairs(4, {{0, 1}, {1, 0}, {0, 2}, {1, 2}})}) {
    const Algebra a(p);
    for (int trial = 0; trial < 10; ++trial) {
      std::vector<Mat> gens = {random_pattern_element(rng, a)};
      const Subspace L = lie_generate(a, gens);
      const Decomposition dec = decompose(a, L);
      CHECK(sum(dec.diag, dec.offdiag) == L);
      CHECK(is_associative_ideal(a, dec.offdiag).ok);
      CHECK(dec.k_blocks.off_diagonal());

      // The off-diagonal part matches the two-sided ideal the multiplication
      // oracle reaches from its own elements.
      if (dec.offdiag.dim() > 0) {
        std::vector<Mat> seeds;
        for (const auto& row : dec.offdiag.basis()) {
          seeds.push_back(Mat::from_vector(a.n(), a.n(), row));
        }
        CHECK(bareiss_rank_mats(brute_force_ideal(a, seeds)) == dec.offdiag.dim());
      }
    }
  }
}

TEST_CASE("constraint graph and maximal addend on chains") {
  const Algebra t2(Pattern::upper_triangular(2));
  std::vector<Rational> id2(4, Rational(0));
  id2[0] = id2[3] = 1;

  // K empty: blocks 1 and 2 are linked, the only addend basis is the identity.
  const MaximalAddend f0 = maximal_addend(t2, BlockIdeal{});
  CHECK(f0.graph.edges == Pairs{{0, 1}});
  CHECK(f0.graph.components == std::vector<std::vector<std::size_t>>{{0, 1}});
  CHECK(f0.graph.free_nodes.empty());
  CHECK(f0.addend == Subspace::span({id2}, 4));
  CHECK(is_lie_ideal(t2, f0.addend).ok);

  // K = {(1,2)}: no constraints left, every diagonal works, F + K = T_2.
  const BlockIdeal k12{{{0, 1}}};
  const MaximalAddend f1 = maximal_addend(t2, k12);
  CHECK(f1.graph.edges.empty());
  CHECK(f1.addend.dim() == 2);
  CHECK(sum(f1.addend, ideal_subspace(t2, k12)) == t2.algebra_subspace());

  // T_3 with K = {(1,3)}: edges (1,2),(2,3) glue everything into one
  // component, F is the scalars.
  const Algebra t3(Pattern::upper_triangular(3));
  const MaximalAddend f2 = maximal_addend(t3, BlockIdeal{{{0, 2}}});
  CHECK(f2.graph.edges == Pairs{{0, 1}, {1, 2}});
  CHECK(f2.graph.components == std::vector<std::vector<std::size_t>>{{0, 1, 2}});
  std::vector<Rational> id3(9, Rational(0));
  id3[0] = id3[4] = id3[8] = 1;
  CHECK(f2.addend == Subspace::span({id3}, 9));
}

TEST_CASE("maximal addend is maximal and round-trips through decompose") {
  Rng rng(71);
  for (const Pattern& p : {Pattern::upper_triangular(2), Pattern::upper_triangular(3),
                           Pattern::upper_triangular(4), Pattern::full(3),
                           Pattern::from_pairs(4, {{0, 1}, {1, 0}, {0, 2}, {1, 2}}),
                           Pattern::from_pairs(5, {{0, 1}, {1, 0}, {0, 2}, {1, 2}, {3, 2}})}) {
    const Algebra a(p);
    for (const BlockIdeal& k : enumerate_offdiag_ideals(a)) {
      const MaximalAddend ma = maximal_addend(a, k);
      const Subspace ks = ideal_subspace(a, k);
      const Subspace L = sum(ma.addend, ks);
      CHECK(is_lie_ideal(a, L).ok);

      // Round trip.
      const Decomposition dec = decompose(a, L);
      CHECK(dec.diag == ma.addend);
      CHECK(dec.offdiag == ks);
      CHECK(dec.k_blocks == k);

      // Maximality: adjoining any diagonal unit outside F breaks the Lie
      // property.
      for (const auto& [i, j] : a.unit_pairs()) {
        if (a.block_of(i) != a.block_of(j)) continue;
        std::vector<Rational> d(a.ambient_dim(), Rational(0));
        d[i * a.n() + j] = 1;
        if (ma.addend.contains(d)) continue;
        const Subspace bigger = sum(L, Subspace::span({d}, a.ambient_dim()));
        CHECK_FALSE(is_lie_ideal(a, bigger).ok);
      }
    }
  }
}

TEST_CASE("triangular specialization: equal-diagonal constraint space") {
  // For singleton blocks F is exactly {d diagonal : d_ii = d_jj whenever
  // (i,j) survives in the strict pattern}. Independent route: union-find on
  // indices over surviving pairs, then span of component indicators.
  for (const Pattern& p :
       {Pattern::upper_triangular(3), Pattern::upper_triangular(4),
        Pattern::from_pairs(4, {{0, 2}, {1, 2}, {0, 3}, {1, 3}, {2, 3}})}) {
    const Algebra a(p);
    const std::size_t n = a.n();
    for (const BlockIdeal& k : enumerate_offdiag_ideals(a)) {
      const MaximalAddend ma = maximal_addend(a, k);

      std::vector<std::size_t> parent(n);
      for (std::size_t i = 0; i < n; ++i) parent[i] = i;
      auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
      };
      std::set<Pairs::value_type> kset(k.pairs.begin(), k.pairs.end());
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          if (i == j || !a.pattern().has(i, j)) continue;
          if (!kset.count({a.block_of(i), a.block_of(j)})) parent[find(i)] = find(j);
        }
      }
      std::vector<std::vector<Rational>> gens;
      for (std::size_t root = 0; root < n; ++root) {
        std::vector<Rational> v(n * n, Rational(0));
        bool hit = false;
        for (std::size_t i = 0; i < n; ++i) {
          if (find(i) == root) {
            v[i * n + i] = 1;
            hit = true;
          }
        }
        if (hit && find(root) == root) gens.push_back(std::move(v));
      }
      CHECK(Subspace::span(gens, n * n) == ma.addend);
    }
  }
}

TEST_CASE("classification of addends") {
  const Algebra m2(Pattern::full(2));
  const auto full_block = classify_addend(m2, BlockIdeal{}, trace_zero_m2());
  REQUIRE(full_block.accepted());
  CHECK(full_block.descriptor->kinds == std::vector<AddendKind>{AddendKind::TraceZero});
  CHECK(full_block.descriptor->scalar_tuples.dim() == 0);

  const Algebra t2(Pattern::upper_triangular(2));
  const Subspace e11 = Subspace::span({unit_vec(2, 0, 0)}, 4);

  // Without K the edge (1,2) forces equal scalars; e11 has scalars 1 and 0.
  const auto rejected = classify_addend(t2, BlockIdeal{}, e11);
  REQUIRE_FALSE(rejected.accepted());
  CHECK(rejected.rejection->condition == "unequal scalars across a constraint edge");
  CHECK(rejected.rejection->edge == std::make_pair(std::size_t(0), std::size_t(1)));
  CHECK_FALSE(is_lie_ideal(t2, e11).ok);

  // With K = {(1,2)} the constraint disappears.
  const auto accepted = classify_addend(t2, BlockIdeal{{{0, 1}}}, e11);
  REQUIRE(accepted.accepted());
  CHECK(accepted.descriptor->kinds ==
        std::vector<AddendKind>{AddendKind::Scalar, AddendKind::Zero});
  CHECK(accepted.descriptor->linkage == std::vector<std::vector<std::size_t>>{{0}});
  CHECK(is_lie_ideal(t2, sum(e11, ideal_subspace(t2, BlockIdeal{{{0, 1}}}))).ok);
}

TEST_CASE("classification agrees with the bracket test on random candidates") {
  Rng rng(73);
  for (const Pattern& p : {Pattern::upper_triangular(3), Pattern::full(2),
                           Pattern::from_pairs(4, {{0, 1}, {1, 0}, {0, 2}, {1, 2}}),
                           Pattern::from_pairs(5, {{0, 1}, {1, 0}, {2, 3}, {3, 2}, {0, 4}, {1, 4}})}) {
    const Algebra a(p);
    const std::size_t n = a.n();
    for (const BlockIdeal& k : enumerate_offdiag_ideals(a)) {
      const Subspace ks = ideal_subspace(a, k);
      for (int trial = 0; trial < 8; ++trial) {
        // Random diagonal-part subspace, biased toward structured choices.
        std::vector<std::vector<Rational>> gens;
        const std::size_t count = 1 + rng.index(3);
        for (std::size_t g = 0; g < count; ++g) {
          std::vector<Rational> v(n * n, Rational(0));
          for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
              if (a.block_of(i) != a.block_of(j)) continue;
              if (rng.chance(1, 2)) v[i * n + j] = Rational(rng.pick(-1, 2));
            }
          }
          gens.push_back(std::move(v));
        }
        const Subspace g = Subspace::span(gens, n * n);
        const auto result = classify_addend(a, k, g);
        const bool lie = is_lie_ideal(a, sum(g, ks)).ok;
        CHECK(result.accepted() == lie);

        if (result.accepted()) {
          // The descriptor reconstructs the addend and the full ideal.
          CHECK(addend_subspace(a, *result.descriptor) == g);
          CHECK(lie_ideal_subspace(a, *result.descriptor) == sum(g, ks));
        }
      }
    }
  }
}

TEST_CASE("two-summand commutation forces a shared scalar") {
  // x supported on two diagonal blocks commuting with every cross unit must
  // be a multiple of the joint identity: the kernel of the commutation
  // system is one-dimensional and contains it.
  Rng rng(79);
  for (int a_sz = 1; a_sz <= 3; ++a_sz) {
    for (int b_sz = 1; b_sz <= 3; ++b_sz) {
      const std::size_t n = static_cast<std::size_t>(a_sz + b_sz);
      Pattern p(n);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          const bool in_a = i < std::size_t(a_sz) && j < std::size_t(a_sz);
          const bool in_b = i >= std::size_t(a_sz) && j >= std::size_t(a_sz);
          const bool cross = i < std::size_t(a_sz) && j >= std::size_t(a_sz);
          if (in_a || in_b || cross) p.add(i, j);
        }
      }
      const Algebra alg(p);

      // Diagonal-part basis and cross units.
      std::vector<std::pair<std::size_t, std::size_t>> diag_pairs;
      std::vector<std::pair<std::size_t, std::size_t>> cross_pairs;
      for (const auto& pr : alg.unit_pairs()) {
        if (alg.block_of(pr.first) == alg.block_of(pr.second)) {
          diag_pairs.push_back(pr);
        } else {
          cross_pairs.push_back(pr);
        }
      }

      // Rows: coordinates of [d, e] for each diagonal basis unit d against
      // each cross unit e; kernel = commuting diagonal elements.
      Mat system(cross_pairs.size() * n * n, diag_pairs.size());
      for (std::size_t col = 0; col < diag_pairs.size(); ++col) {
        const auto& [di, dj] = diag_pairs[col];
        std::vector<Rational> d(n * n, Rational(0));
        d[di * n + dj] = 1;
        for (std::size_t e = 0; e < cross_pairs.size(); ++e) {
          const auto& [ei, ej] = cross_pairs[e];
          // [x, e] = -[e, x]
          std::vector<Rational> br = bracket_unit_vec(n, ei, ej, d);
          for (std::size_t c = 0; c < n * n; ++c) system.at(e * n * n + c, col) = -br[c];
        }
      }
      const auto kernel = kernel_of(system);
      REQUIRE(kernel.size() == 1);

      // The kernel vector, expanded over the diagonal basis, is a scalar
      // multiple of the identity.
      std::vector<Rational> x(n * n, Rational(0));
      for (std::size_t col = 0; col < diag_pairs.size(); ++col) {
        const auto& [di, dj] = diag_pairs[col];
        x[di * n + dj] = kernel[0][col];
      }
      const Rational lambda = x[0];
      CHECK_FALSE(is_zero(lambda));
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          CHECK(x[i * n + j] == (i == j ? lambda : Rational(0)));
        }
      }
      (void)rng;
    }
  }
}

TEST_CASE("full matrix algebras carry exactly four lie ideals") {
  Rng rng(83);
  for (std::size_t n : {std::size_t(2), std::size_t(3)}) {
    const Algebra a(Pattern::full(n));
    std::vector<Rational> id(n * n, Rational(0));
    for (std::size_t i = 0; i < n; ++i) id[i * n + i] = 1;

    std::vector<std::vector<Rational>> tz;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (i != j) {
          std::vector<Rational> v(n * n, Rational(0));
          v[i * n + j] = 1;
          tz.push_back(std::move(v));
        }
      }
    }
    for (std::size_t i = 0; i + 1 < n; ++i) {
      std::vector<Rational> v(n * n, Rational(0));
      v[i * n + i] = 1;
      v[(i + 1) * n + (i + 1)] = -1;
      tz.push_back(std::move(v));
    }

    const std::vector<Subspace> four = {
        Subspace::zero(n * n), Subspace::span({id}, n * n),
        Subspace::span(tz, n * n), a.algebra_subspace()};
    for (const auto& s : four) CHECK(is_lie_ideal(a, s).ok);

    // Random single generators never reach a fifth class.
    for (int trial = 0; trial < 40; ++trial) {
      const Subspace L = lie_generate(a, {random_pattern_element(rng, a)});
      CHECK(std::count(four.begin(), four.end(), L) == 1);
    }
  }
}
