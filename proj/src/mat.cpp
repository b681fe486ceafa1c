#include "lil/mat.hpp"

#include "lil/error.hpp"

#include <utility>

namespace lil {

namespace {

void require_same_shape(const Mat& a, const Mat& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    fail(Status::Dimension, "matrix shape mismatch");
  }
}

} // namespace

Mat::Mat(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, Rational(0)) {}

Mat Mat::identity(std::size_t n) {
  Mat m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

bool Mat::operator==(const Mat& other) const {
  if (rows_ != other.rows_ || cols_ != other.cols_) return false;
  for (std::size_t k = 0; k < data_.size(); ++k) {
    if (data_[k] != other.data_[k]) return false;
  }
  return true;
}

bool Mat::is_zero() const {
  for (const auto& v : data_) {
    if (!lil::is_zero(v)) return false;
  }
  return true;
}

Mat Mat::operator+(const Mat& other) const {
  require_same_shape(*this, other);
  Mat out(rows_, cols_);
  for (std::size_t k = 0; k < data_.size(); ++k) {
    out.data_[k] = data_[k] + other.data_[k];
  }
  return out;
}

Mat Mat::operator-(const Mat& other) const {
  require_same_shape(*this, other);
  Mat out(rows_, cols_);
  for (std::size_t k = 0; k < data_.size(); ++k) {
    out.data_[k] = data_[k] - other.data_[k];
  }
  return out;
}

Mat Mat::operator*(const Mat& other) const {
  if (cols_ != other.rows_) fail(Status::Dimension, "matrix product shape mismatch");
  Mat out(rows_, other.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t k = 0; k < cols_; ++k) {
      const Rational& left = at(i, k);
      if (lil::is_zero(left)) continue;
      for (std::size_t j = 0; j < other.cols_; ++j) {
        const Rational& right = other.at(k, j);
        if (lil::is_zero(right)) continue;
        out.at(i, j) += left * right;
      }
    }
  }
  return out;
}

Mat Mat::operator*(const Rational& scalar) const {
  Mat out(rows_, cols_);
  for (std::size_t k = 0; k < data_.size(); ++k) out.data_[k] = data_[k] * scalar;
  return out;
}

Mat Mat::operator-() const { return *this * Rational(-1); }

Mat Mat::transpose() const {
  Mat out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) out.at(j, i) = at(i, j);
  }
  return out;
}

Rational Mat::trace() const {
  if (!is_square()) fail(Status::Dimension, "trace of a non-square matrix");
  Rational t(0);
  for (std::size_t i = 0; i < rows_; ++i) t += at(i, i);
  return t;
}

Mat Mat::from_vector(std::size_t rows, std::size_t cols,
                     std::vector<Rational> coords) {
  if (coords.size() != rows * cols) {
    fail(Status::Dimension, "coordinate vector length does not match shape");
  }
  Mat m;
  m.rows_ = rows;
  m.cols_ = cols;
  m.data_ = std::move(coords);
  return m;
}

Mat bracket(const Mat& x, const Mat& y) {
  if (!x.is_square() || !y.is_square() || x.rows() != y.rows()) {
    fail(Status::Dimension, "bracket requires square matrices of equal size");
  }
  return x * y - y * x;
}

Mat rref(const Mat& m) {
  Mat r = m;
  const std::size_t rows = r.rows();
  const std::size_t cols = r.cols();
  std::size_t lead = 0;
  for (std::size_t col = 0; col < cols && lead < rows; ++col) {
    std::size_t pivot = lead;
    while (pivot < rows && is_zero(r.at(pivot, col))) ++pivot;
    if (pivot == rows) continue;
    if (pivot != lead) {
      for (std::size_t j = 0; j < cols; ++j) swap(r.at(pivot, j), r.at(lead, j));
    }
    const Rational inv = 1 / r.at(lead, col);
    for (std::size_t j = col; j < cols; ++j) r.at(lead, j) *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == lead || is_zero(r.at(i, col))) continue;
      const Rational factor = r.at(i, col);
      for (std::size_t j = col; j < cols; ++j) {
        r.at(i, j) -= factor * r.at(lead, j);
      }
    }
    ++lead;
  }
  return r;
}

} // namespace lil
