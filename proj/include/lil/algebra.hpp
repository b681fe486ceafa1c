#ifndef LIL_ALGEBRA_HPP
#define LIL_ALGEBRA_HPP

#include "lil/mat.hpp"
#include "lil/subspace.hpp"

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace lil {

/// 0/* incidence structure on {0..n-1}. The pair (i, j) being present means
/// the algebra contains the matrix unit e_ij. A pattern describes an algebra
/// exactly when it is reflexive and transitive; see Algebra.
class Pattern {
public:
  explicit Pattern(std::size_t n); // diagonal pairs only
  static Pattern full(std::size_t n);
  static Pattern upper_triangular(std::size_t n); // T_n
  static Pattern diagonal(std::size_t n);
  static Pattern from_pairs(std::size_t n,
                            const std::vector<std::pair<std::size_t, std::size_t>>& pairs);

  /// Parses the .pat format: optional '#' comment lines, a "n <size>" header,
  /// then n rows of n characters from {*, .} (whitespace ignored inside rows).
  static Pattern parse(const std::string& text);
  std::string format() const;

  std::size_t size() const { return n_; }
  bool has(std::size_t i, std::size_t j) const { return grid_[i * n_ + j]; }
  void add(std::size_t i, std::size_t j);

  std::size_t entry_count() const;
  std::vector<std::pair<std::size_t, std::size_t>> entries() const; // row-major order

  bool operator==(const Pattern& other) const = default;

private:
  std::size_t n_ = 0;
  std::vector<char> grid_;
};

/// Blocks of the diagonal part and the canonical block-upper-triangular
/// order. Blocks are the classes of the mutual-pair relation; the poset holds
/// the strictly-upper block pairs (u, v), u < v in canonical numbering, whose
/// cross block is (fully) present.
struct BlockStructure {
  std::vector<std::vector<std::size_t>> blocks; // canonical order, original indices ascending
  std::vector<std::size_t> block_of;            // original index -> canonical block id
  std::vector<std::size_t> order;               // new position -> original index
  std::vector<std::pair<std::size_t, std::size_t>> poset; // canonical ids, u < v, sorted

  std::size_t block_count() const { return blocks.size(); }
  bool poset_has(std::size_t u, std::size_t v) const;
  /// u == v, or a (possibly indirect) poset path u -> v. The poset is
  /// transitive, so this is a single lookup plus the equality case.
  bool below_or_equal(std::size_t u, std::size_t v) const {
    return u == v || poset_has(u, v);
  }
};

/// A validated digraph algebra: the pattern together with its derived block
/// data, matrix units and diagonal/off-diagonal splitting.
class Algebra {
public:
  /// Validates reflexivity and transitivity; throws Status::Pattern with the
  /// offending indices otherwise.
  explicit Algebra(Pattern pattern);

  const Pattern& pattern() const { return pattern_; }
  const BlockStructure& blocks() const { return blocks_; }
  std::size_t n() const { return pattern_.size(); }
  std::size_t dim() const { return unit_pairs_.size(); }
  std::size_t ambient_dim() const { return n() * n(); }

  const std::vector<std::pair<std::size_t, std::size_t>>& unit_pairs() const {
    return unit_pairs_;
  }
  Mat unit(std::size_t index) const;
  Mat unit(std::size_t i, std::size_t j) const;

  Subspace algebra_subspace() const;
  /// (E, S): spans of the units inside the diagonal blocks and of the units
  /// crossing blocks. E + S is the whole algebra, E meets S in 0.
  std::pair<Subspace, Subspace> diag_offdiag_split() const;

  /// Conditional expectation onto the block-diagonal part: zeroes every entry
  /// whose row and column sit in different blocks. Defined on all of M_n.
  Mat pi(const Mat& x) const;

  bool supports(const Mat& x) const;
  void require_supported(const Mat& x, const std::string& what) const;
  /// Throws Status::NotInAlgebra unless every basis vector is supported.
  void require_inside(const Subspace& s, const std::string& what) const;

  std::size_t block_of(std::size_t i) const { return blocks_.block_of[i]; }
  std::size_t block_size(std::size_t u) const { return blocks_.blocks[u].size(); }
  /// Identity of block u (the minimal central projection f_u).
  Mat block_identity(std::size_t u) const;

  /// Strict block pairs (u, v), u < v canonically, with a nonzero cross
  /// block; this is the edge set the off-diagonal part is built from.
  const std::vector<std::pair<std::size_t, std::size_t>>& strict_pairs() const {
    return blocks_.poset;
  }

private:
  Pattern pattern_;
  BlockStructure blocks_;
  std::vector<std::pair<std::size_t, std::size_t>> unit_pairs_;
};

/// Validation entry point; returns the derived block structure.
BlockStructure validate_pattern(const Pattern& p);

/// All matrix units e_ij with (i, j) in the pattern, in row-major pair order.
std::vector<Mat> matrix_units(const Pattern& p);

} // namespace lil

#endif
