#ifndef LIL_IDEAL_HPP
#define LIL_IDEAL_HPP

#include "lil/algebra.hpp"
#include "lil/subspace.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace lil {

/// A set of block pairs closed above and to the right (non-strict reading):
/// if (u, v) is present, t reaches u and v reaches s in the block order, and
/// the (t, s) cross block exists in the algebra, then (t, s) is present too.
/// Such a set spans a two-sided ideal made of full blocks.
struct BlockIdeal {
  std::vector<std::pair<std::size_t, std::size_t>> pairs; // canonical ids, sorted

  bool off_diagonal() const; // no (u, u) pairs
  bool operator==(const BlockIdeal& other) const = default;
};

/// Smallest up-closed block set containing the seed. Seeds must name block
/// pairs present in the algebra (diagonal pairs (u, u) are allowed and pull
/// in whole diagonal blocks).
BlockIdeal ideal_closure(const Algebra& a,
                         const std::vector<std::pair<std::size_t, std::size_t>>& seed);

/// Every up-closed subset of the strict block pairs, sorted by cardinality
/// then lexicographically. Throws Status::TooLarge when the strict pair
/// count exceeds max_pairs (enumeration only; closure has no cap).
std::vector<BlockIdeal> enumerate_offdiag_ideals(const Algebra& a,
                                                 std::size_t max_pairs = 24);

/// Span of all matrix units e_ij whose block pair lies in the ideal.
Subspace ideal_subspace(const Algebra& a, const BlockIdeal& k);

/// Reads the block support of a subspace known to consist of full blocks.
BlockIdeal block_support(const Algebra& a, const Subspace& s);

struct IdealWitness {
  std::pair<std::size_t, std::size_t> unit; // 0-based pair of the matrix unit
  std::size_t basis_index;
  bool right_side; // true: basis * unit escaped; false: unit * basis escaped
};

struct IdealCheck {
  bool ok = false;
  std::optional<IdealWitness> witness;
};

/// Ground-truth associative-ideal test: e*b and b*e stay in s for every
/// matrix unit e and basis element b. Requires s inside the algebra.
IdealCheck is_associative_ideal(const Algebra& a, const Subspace& s);

/// "(1,2);(3,4)" -> 0-based pairs. Used by the CLI seed arguments.
std::vector<std::pair<std::size_t, std::size_t>> parse_pair_list(const std::string& text);
std::string format_pair_list(const std::vector<std::pair<std::size_t, std::size_t>>& pairs);

} // namespace lil

#endif
