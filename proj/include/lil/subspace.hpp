#ifndef LIL_SUBSPACE_HPP
#define LIL_SUBSPACE_HPP

#include "lil/mat.hpp"
#include "lil/rational.hpp"

#include <cstddef>
#include <vector>

namespace lil {

class Subspace;

/// Incremental span builder maintaining a reduced row-echelon basis.
/// insert() returns true when the span grows; membership tests reuse the
/// same reduction. This is the workhorse behind span(), the Lie-closure
/// sweeps and the ideal checks.
class RrefBuilder {
public:
  explicit RrefBuilder(std::size_t ambient_dim);

  /// Reduces v against the current basis and adjoins it if independent.
  bool insert(std::vector<Rational> v);

  bool contains(const std::vector<Rational>& v) const;

  std::size_t dim() const { return rows_.size(); }
  std::size_t ambient_dim() const { return ambient_; }
  const std::vector<std::vector<Rational>>& rows() const { return rows_; }

  Subspace to_subspace() const;

private:
  void reduce(std::vector<Rational>& v) const;

  std::size_t ambient_;
  std::vector<std::vector<Rational>> rows_; // RREF, ordered by pivot column
  std::vector<std::size_t> pivots_;
};

/// Linear subspace of Q^ambient in canonical form: the basis rows are the
/// nonzero rows of a reduced row-echelon matrix. Two subspaces are equal iff
/// their bases are identical entry-wise, so equality is a data comparison.
class Subspace {
public:
  static Subspace zero(std::size_t ambient_dim);
  static Subspace span(const std::vector<std::vector<Rational>>& vectors,
                       std::size_t ambient_dim);
  static Subspace span_mats(const std::vector<Mat>& mats,
                            std::size_t ambient_dim);

  std::size_t ambient_dim() const { return ambient_; }
  std::size_t dim() const { return basis_.size(); }
  const std::vector<std::vector<Rational>>& basis() const { return basis_; }

  bool contains(const std::vector<Rational>& v) const;
  bool contains(const Subspace& other) const;
  bool operator==(const Subspace& other) const;

private:
  friend class RrefBuilder;
  Subspace(std::size_t ambient, std::vector<std::vector<Rational>> basis,
           std::vector<std::size_t> pivots);

  std::size_t ambient_ = 0;
  std::vector<std::vector<Rational>> basis_;
  std::vector<std::size_t> pivots_;
};

Subspace sum(const Subspace& a, const Subspace& b);

/// Exact intersection via the kernel of the stacked matrix [A^T | -B^T]:
/// a kernel vector (u, v) satisfies u^T A = v^T B, and u^T A runs over the
/// intersection as the kernel is swept.
Subspace intersect(const Subspace& a, const Subspace& b);

} // namespace lil

#endif
