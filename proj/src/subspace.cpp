#include "lil/subspace.hpp"

#include "lil/error.hpp"

#include <algorithm>
#include <utility>

namespace lil {

RrefBuilder::RrefBuilder(std::size_t ambient_dim) : ambient_(ambient_dim) {}

void RrefBuilder::reduce(std::vector<Rational>& v) const {
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    Rational& coeff = v[pivots_[r]];
    if (is_zero(coeff)) continue;
    const Rational factor = coeff;
    const auto& row = rows_[r];
    for (std::size_t c = pivots_[r]; c < ambient_; ++c) {
      if (!is_zero(row[c])) v[c] -= factor * row[c];
    }
  }
}

bool RrefBuilder::insert(std::vector<Rational> v) {
  if (v.size() != ambient_) fail(Status::Dimension, "vector length does not match ambient dimension");
  reduce(v);
  std::size_t pivot = 0;
  while (pivot < ambient_ && is_zero(v[pivot])) ++pivot;
  if (pivot == ambient_) return false;

  const Rational inv = 1 / v[pivot];
  for (std::size_t c = pivot; c < ambient_; ++c) v[c] *= inv;

  // Eliminate the new pivot from the existing rows to keep full RREF.
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    Rational& coeff = rows_[r][pivot];
    if (is_zero(coeff)) continue;
    const Rational factor = coeff;
    for (std::size_t c = pivot; c < ambient_; ++c) {
      if (!is_zero(v[c])) rows_[r][c] -= factor * v[c];
    }
  }

  const auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), pivot);
  const std::size_t idx = static_cast<std::size_t>(pos - pivots_.begin());
  pivots_.insert(pos, pivot);
  rows_.insert(rows_.begin() + static_cast<std::ptrdiff_t>(idx), std::move(v));
  return true;
}

bool RrefBuilder::contains(const std::vector<Rational>& v) const {
  if (v.size() != ambient_) fail(Status::Dimension, "vector length does not match ambient dimension");
  std::vector<Rational> w = v;
  reduce(w);
  for (const auto& c : w) {
    if (!is_zero(c)) return false;
  }
  return true;
}

Subspace RrefBuilder::to_subspace() const {
  return Subspace(ambient_, rows_, pivots_);
}

Subspace::Subspace(std::size_t ambient, std::vector<std::vector<Rational>> basis,
                   std::vector<std::size_t> pivots)
    : ambient_(ambient), basis_(std::move(basis)), pivots_(std::move(pivots)) {}

Subspace Subspace::zero(std::size_t ambient_dim) {
  return Subspace(ambient_dim, {}, {});
}

Subspace Subspace::span(const std::vector<std::vector<Rational>>& vectors,
                        std::size_t ambient_dim) {
  RrefBuilder builder(ambient_dim);
  for (const auto& v : vectors) builder.insert(v);
  return builder.to_subspace();
}

Subspace Subspace::span_mats(const std::vector<Mat>& mats,
                             std::size_t ambient_dim) {
  RrefBuilder builder(ambient_dim);
  for (const auto& m : mats) builder.insert(m.vectorize());
  return builder.to_subspace();
}

bool Subspace::contains(const std::vector<Rational>& v) const {
  if (v.size() != ambient_) fail(Status::Dimension, "vector length does not match ambient dimension");
  std::vector<Rational> w = v;
  for (std::size_t r = 0; r < basis_.size(); ++r) {
    Rational& coeff = w[pivots_[r]];
    if (is_zero(coeff)) continue;
    const Rational factor = coeff;
    const auto& row = basis_[r];
    for (std::size_t c = pivots_[r]; c < ambient_; ++c) {
      if (!is_zero(row[c])) w[c] -= factor * row[c];
    }
  }
  return std::all_of(w.begin(), w.end(), [](const Rational& c) { return is_zero(c); });
}

bool Subspace::contains(const Subspace& other) const {
  if (other.ambient_ != ambient_) fail(Status::Dimension, "ambient dimension mismatch");
  return std::all_of(other.basis_.begin(), other.basis_.end(),
                     [this](const std::vector<Rational>& v) { return contains(v); });
}

bool Subspace::operator==(const Subspace& other) const {
  return ambient_ == other.ambient_ && basis_ == other.basis_;
}

Subspace sum(const Subspace& a, const Subspace& b) {
  if (a.ambient_dim() != b.ambient_dim()) fail(Status::Dimension, "ambient dimension mismatch");
  RrefBuilder builder(a.ambient_dim());
  for (const auto& v : a.basis()) builder.insert(v);
  for (const auto& v : b.basis()) builder.insert(v);
  return builder.to_subspace();
}

Subspace intersect(const Subspace& a, const Subspace& b) {
  if (a.ambient_dim() != b.ambient_dim()) fail(Status::Dimension, "ambient dimension mismatch");
  const std::size_t n = a.ambient_dim();
  const std::size_t da = a.dim();
  const std::size_t db = b.dim();
  if (da == 0 || db == 0) return Subspace::zero(n);

  // Stack [A^T | -B^T] and read the intersection off its kernel.
  Mat stacked(n, da + db);
  for (std::size_t r = 0; r < da; ++r) {
    for (std::size_t c = 0; c < n; ++c) stacked.at(c, r) = a.basis()[r][c];
  }
  for (std::size_t r = 0; r < db; ++r) {
    for (std::size_t c = 0; c < n; ++c) stacked.at(c, da + r) = -b.basis()[r][c];
  }

  const Mat reduced = rref(stacked);
  const std::size_t cols = da + db;

  std::vector<std::size_t> pivot_col_of_row;
  std::vector<bool> is_pivot_col(cols, false);
  for (std::size_t r = 0; r < n; ++r) {
    std::size_t c = 0;
    while (c < cols && is_zero(reduced.at(r, c))) ++c;
    if (c == cols) break;
    pivot_col_of_row.push_back(c);
    is_pivot_col[c] = true;
  }

  RrefBuilder builder(n);
  for (std::size_t free_col = 0; free_col < cols; ++free_col) {
    if (is_pivot_col[free_col]) continue;
    // Kernel vector with this free column set to 1.
    std::vector<Rational> kernel(cols, Rational(0));
    kernel[free_col] = 1;
    for (std::size_t r = 0; r < pivot_col_of_row.size(); ++r) {
      kernel[pivot_col_of_row[r]] = -reduced.at(r, free_col);
    }
    // Pull back through the A-side coefficients.
    std::vector<Rational> member(n, Rational(0));
    for (std::size_t r = 0; r < da; ++r) {
      if (is_zero(kernel[r])) continue;
      for (std::size_t c = 0; c < n; ++c) {
        if (!is_zero(a.basis()[r][c])) member[c] += kernel[r] * a.basis()[r][c];
      }
    }
    builder.insert(std::move(member));
  }
  return builder.to_subspace();
}

} // namespace lil
