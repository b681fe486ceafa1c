#ifndef LIL_MAT_HPP
#define LIL_MAT_HPP

#include "lil/rational.hpp"

#include <cstddef>
#include <vector>

namespace lil {

/// Dense rational matrix, row-major storage.
///
/// Vectorization is row-major throughout the project: the matrix entry (i, j)
/// of an r x c matrix lands at coordinate i*c + j. Every subspace of a matrix
/// space is expressed in these coordinates.
class Mat {
public:
  Mat() = default;
  Mat(std::size_t rows, std::size_t cols);

  static Mat identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rational& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Rational& at(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  bool operator==(const Mat& other) const;
  bool is_zero() const;
  bool is_square() const { return rows_ == cols_; }

  Mat operator+(const Mat& other) const;
  Mat operator-(const Mat& other) const;
  Mat operator*(const Mat& other) const;
  Mat operator*(const Rational& scalar) const;
  Mat operator-() const;
  Mat transpose() const;

  Rational trace() const;

  std::vector<Rational> vectorize() const { return data_; }
  static Mat from_vector(std::size_t rows, std::size_t cols,
                         std::vector<Rational> coords);

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

/// Commutator xy - yx. Requires square matrices of equal size.
Mat bracket(const Mat& x, const Mat& y);

/// Reduced row-echelon form; shape preserved, zero rows sink to the bottom.
Mat rref(const Mat& m);

} // namespace lil

#endif
