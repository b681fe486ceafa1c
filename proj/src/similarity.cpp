#include "lil/similarity.hpp"

#include "lil/error.hpp"

#include <utility>

namespace lil {

std::optional<std::size_t> nilpotence_order(const Mat& m) {
  if (!m.is_square()) fail(Status::Dimension, "nilpotence order of a non-square matrix");
  if (m.is_zero()) return 0;
  Mat power = m;
  for (std::size_t k = 1; k <= m.rows(); ++k) {
    Mat next = power * m;
    if (next.is_zero()) return k;
    power = std::move(next);
  }
  return std::nullopt;
}

namespace {

// Gauss-Jordan inverse of the block of `d` at the given indices; throws
// Status::Singular naming the (1-based) block.
Mat invert_block(const Mat& d, const std::vector<std::size_t>& idx, std::size_t block_id) {
  const std::size_t m = idx.size();
  Mat work(m, 2 * m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) work.at(i, j) = d.at(idx[i], idx[j]);
    work.at(i, m + i) = 1;
  }
  for (std::size_t col = 0; col < m; ++col) {
    std::size_t pivot = col;
    while (pivot < m && is_zero(work.at(pivot, col))) ++pivot;
    if (pivot == m) {
      fail(Status::Singular,
           "diagonal block " + std::to_string(block_id + 1) + " is singular");
    }
    if (pivot != col) {
      for (std::size_t j = 0; j < 2 * m; ++j) swap(work.at(pivot, j), work.at(col, j));
    }
    const Rational inv = 1 / work.at(col, col);
    for (std::size_t j = 0; j < 2 * m; ++j) work.at(col, j) *= inv;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == col || is_zero(work.at(i, col))) continue;
      const Rational factor = work.at(i, col);
      for (std::size_t j = 0; j < 2 * m; ++j) work.at(i, j) -= factor * work.at(col, j);
    }
  }
  Mat out(m, m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) out.at(i, j) = work.at(i, m + j);
  }
  return out;
}

// Inverse of the block-diagonal part, block by block.
Mat invert_diagonal_part(const Algebra& a, const Mat& d) {
  Mat out(a.n(), a.n());
  for (std::size_t u = 0; u < a.blocks().block_count(); ++u) {
    const auto& idx = a.blocks().blocks[u];
    const Mat inv = invert_block(d, idx, u);
    for (std::size_t i = 0; i < idx.size(); ++i) {
      for (std::size_t j = 0; j < idx.size(); ++j) out.at(idx[i], idx[j]) = inv.at(i, j);
    }
  }
  return out;
}

// (1 + n)^{-1} = sum (-n)^j over the nilpotent range.
Mat invert_one_plus_nilpotent(const Mat& n, std::size_t order) {
  Mat result = Mat::identity(n.rows());
  Mat power = Mat::identity(n.rows());
  for (std::size_t j = 1; j <= order; ++j) {
    power = power * n;
    result = (j % 2 == 0) ? result + power : result - power;
  }
  return result;
}

} // namespace

Mat invert_in_algebra(const Algebra& a, const Mat& t) {
  a.require_supported(t, "element");
  const Mat d = a.pi(t);
  const Mat d_inv = invert_diagonal_part(a, d);
  const Mat n = d_inv * t - Mat::identity(a.n());

  const auto order = nilpotence_order(n);
  if (!order) fail(Status::Assertion, "off-diagonal rest of an algebra element is not nilpotent");

  const Mat t_inv = invert_one_plus_nilpotent(n, *order) * d_inv;
  if (!(t * t_inv == Mat::identity(a.n()))) {
    fail(Status::Assertion, "computed inverse fails t * t^-1 = 1");
  }
  return t_inv;
}

Factorization factor_dn(const Algebra& a, const Mat& t) {
  a.require_supported(t, "element");
  const Mat d = a.pi(t);
  const Mat d_inv = invert_diagonal_part(a, d);
  const Mat n = d_inv * t - Mat::identity(a.n());
  const auto order = nilpotence_order(n);
  if (!order) fail(Status::Assertion, "off-diagonal rest of an algebra element is not nilpotent");
  return {d, n, *order};
}

Mat conjugate(const Algebra& a, const Mat& t, const Mat& x) {
  a.require_supported(x, "element");
  const Mat t_inv = invert_in_algebra(a, t);
  return t_inv * x * t;
}

Mat telescoping_conjugation(const Algebra& a, const Mat& n, const Mat& x) {
  a.require_supported(n, "nilpotent part");
  a.require_supported(x, "element");
  const auto order = nilpotence_order(n);
  if (!order) fail(Status::BadArgument, "matrix is not nilpotent");

  const Mat br = bracket(n, x); // [n, x]
  Mat result = x;
  Mat power = Mat::identity(a.n()); // n^{j-1}
  for (std::size_t j = 1; j <= *order + 1; ++j) {
    const Mat term = power * br;
    result = (j % 2 == 1) ? result - term : result + term;
    power = power * n;
  }
  return result;
}

InvertibleSample random_invertible(const Algebra& a, Rng& rng) {
  const std::size_t size = a.n();
  Mat d(size, size);
  for (std::size_t u = 0; u < a.blocks().block_count(); ++u) {
    const auto& idx = a.blocks().blocks[u];
    const std::size_t m = idx.size();
    // Unit lower triangle times an upper triangle whose diagonal carries one
    // entry of magnitude 1..4 and +-1 elsewhere: determinant +-1..+-4.
    Mat lower = Mat::identity(m);
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < i; ++j) lower.at(i, j) = Rational(rng.pick(-1, 1));
    }
    Mat upper(m, m);
    const std::size_t big = rng.index(m);
    for (std::size_t i = 0; i < m; ++i) {
      const long sign = rng.chance(1, 2) ? 1 : -1;
      upper.at(i, i) = Rational(sign * (i == big ? rng.pick(1, 4) : 1));
      for (std::size_t j = i + 1; j < m; ++j) upper.at(i, j) = Rational(rng.pick(-1, 1));
    }
    const Mat blk = lower * upper;
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < m; ++j) d.at(idx[i], idx[j]) = blk.at(i, j);
    }
  }

  Mat n(size, size);
  for (const auto& [i, j] : a.unit_pairs()) {
    if (a.block_of(i) != a.block_of(j)) n.at(i, j) = Rational(rng.pick(-2, 2));
  }

  InvertibleSample sample;
  sample.d = d;
  sample.d_inv = invert_diagonal_part(a, d);
  sample.n = std::move(n);
  sample.nilpotence = *nilpotence_order(sample.n);
  sample.t = d * (Mat::identity(size) + sample.n);
  sample.t_inv = invert_one_plus_nilpotent(sample.n, sample.nilpotence) * sample.d_inv;
  return sample;
}

Mat random_element(const Algebra& a, Rng& rng, long lo, long hi) {
  Mat m(a.n(), a.n());
  for (const auto& [i, j] : a.unit_pairs()) m.at(i, j) = Rational(rng.pick(lo, hi));
  return m;
}

SimReport check_similarity_invariance(const Algebra& a, const Subspace& lie_ideal,
                                      int trials, std::uint64_t seed, bool split_checks) {
  const LieCheck check = is_lie_ideal(a, lie_ideal);
  if (!check.ok) {
    fail(Status::NotLieIdeal, "similarity check requires a Lie ideal (bracket with unit (" +
                                  std::to_string(check.witness->unit.first + 1) + "," +
                                  std::to_string(check.witness->unit.second + 1) +
                                  ") escapes)");
  }

  SimReport report;
  report.trials = trials;
  report.seed = seed;
  report.split_checked = split_checks;

  const Subspace k_subspace = split_checks ? decompose(a, lie_ideal).offdiag
                                           : Subspace::zero(a.ambient_dim());

  std::vector<Mat> basis;
  basis.reserve(lie_ideal.dim());
  for (const auto& row : lie_ideal.basis()) {
    basis.push_back(Mat::from_vector(a.n(), a.n(), row));
  }

  Rng rng(seed);
  for (int trial = 0; trial < trials; ++trial) {
    const InvertibleSample s = random_invertible(a, rng);
    for (std::size_t b = 0; b < basis.size(); ++b) {
      const Mat conj = s.t_inv * basis[b] * s.t;
      if (!lie_ideal.contains(conj.vectorize())) {
        report.failures.push_back({trial, b, "conjugation"});
      }
      if (!split_checks) continue;

      const Mat diag_conj = s.d_inv * basis[b] * s.d;
      if (!lie_ideal.contains(diag_conj.vectorize())) {
        report.failures.push_back({trial, b, "diagonal"});
      }
      // The nilpotent tail: every n^j [n, x] must fall into K.
      Mat tail = bracket(s.n, basis[b]);
      for (std::size_t j = 0; j <= s.nilpotence; ++j) {
        if (!k_subspace.contains(tail.vectorize())) {
          report.failures.push_back({trial, b, "nilpotent"});
          break;
        }
        tail = s.n * tail;
      }
    }
  }
  return report;
}

ViolationSearch find_similarity_violation(const Algebra& a, const Subspace& s,
                                          int trials, std::uint64_t seed) {
  a.require_inside(s, "subspace");
  std::vector<Mat> basis;
  basis.reserve(s.dim());
  for (const auto& row : s.basis()) basis.push_back(Mat::from_vector(a.n(), a.n(), row));

  ViolationSearch result;
  Rng rng(seed);
  for (int trial = 0; trial < trials; ++trial) {
    const InvertibleSample inv = random_invertible(a, rng);
    result.trials_used = trial + 1;
    for (std::size_t b = 0; b < basis.size(); ++b) {
      const Mat conj = inv.t_inv * basis[b] * inv.t;
      if (!s.contains(conj.vectorize())) {
        result.found = true;
        result.basis_index = b;
        result.witness_t = inv.t;
        return result;
      }
    }
  }
  return result;
}

ExpReport exp_conjugation_check(const Algebra& a, const Mat& elem, const Mat& x,
                                int truncation_order, bool require_exact) {
  a.require_supported(elem, "element");
  a.require_supported(x, "element");

  const auto order = nilpotence_order(elem);
  if (require_exact && !order) {
    fail(Status::BadArgument,
         "exact exponentials need a nilpotent argument over the rationals");
  }

  ExpReport report;
  const Subspace ideal = lie_generate(a, {x});

  // y_0 = x, y_{j+1} = y_j a - a y_j.
  std::vector<Mat> iterates = {x};
  report.iterates_in_ideal = ideal.contains(x.vectorize());
  for (int j = 0; j < truncation_order; ++j) {
    Mat next = iterates.back() * elem - elem * iterates.back();
    if (!ideal.contains(next.vectorize())) report.iterates_in_ideal = false;
    const bool was_zero = next.is_zero();
    iterates.push_back(std::move(next));
    report.iterates_checked = j + 1;
    if (was_zero && order) break; // the series has terminated for nilpotent a
  }

  if (!order) return report;

  report.exact_mode = true;

  // Finite exponentials and the iterate series, both exact.
  const std::size_t k = *order;
  Mat exp_pos = Mat::identity(a.n());
  Mat exp_neg = Mat::identity(a.n());
  Mat power = Mat::identity(a.n());
  Rational factorial(1);
  for (std::size_t i = 1; i <= k; ++i) {
    power = power * elem;
    factorial *= Rational(static_cast<long>(i));
    const Mat term = power * (1 / factorial);
    exp_pos = exp_pos + term;
    exp_neg = (i % 2 == 0) ? exp_neg + term : exp_neg - term;
  }
  const Mat conjugated = exp_neg * x * exp_pos;

  Mat series(a.n(), a.n());
  Rational jfact(1);
  Mat iterate = x;
  for (std::size_t j = 0;; ++j) {
    if (j > 0) {
      iterate = iterate * elem - elem * iterate;
      jfact *= Rational(static_cast<long>(j));
    }
    if (iterate.is_zero()) break;
    series = series + iterate * (1 / jfact);
    if (j > 2 * k + 2) break; // ad-nilpotency bound; cannot trigger for nilpotent a
  }

  report.exponential_matches_series = (conjugated == series);
  report.conjugate_in_ideal = ideal.contains(conjugated.vectorize());
  return report;
}

} // namespace lil
