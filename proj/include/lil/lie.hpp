#ifndef LIL_LIE_HPP
#define LIL_LIE_HPP

#include "lil/algebra.hpp"
#include "lil/ideal.hpp"
#include "lil/subspace.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace lil {

struct LieWitness {
  std::pair<std::size_t, std::size_t> unit; // 0-based matrix-unit pair
  std::size_t basis_index;
};

struct LieCheck {
  bool ok = false;
  std::optional<LieWitness> witness;
};

/// Bracket test against all matrix units: [e, b] must stay in s for every
/// unit e and basis element b. Units suffice because brackets are bilinear
/// and the units span the algebra. With ambient = true, s may live anywhere
/// in M_n (a Lie subspace over the algebra); otherwise s must sit inside it.
LieCheck is_lie_ideal(const Algebra& a, const Subspace& s, bool ambient = false);

/// Smallest Lie ideal containing the generators: adjoin bracket images with
/// all units until the dimension stabilizes (at most dim A insertions).
Subspace lie_generate(const Algebra& a, const std::vector<Mat>& gens,
                      bool ambient = false);

/// L = G + K with G the block-diagonal compression of L and K the
/// off-diagonal rest. K always comes out as an associative ideal made of
/// full blocks; this is re-verified on every call.
struct Decomposition {
  Subspace diag;       // G
  Subspace offdiag;    // K as a subspace
  BlockIdeal k_blocks; // K as a block set
};
Decomposition decompose(const Algebra& a, const Subspace& lie_ideal);

/// Blocks joined by an off-diagonal pair the ideal misses: those pairs force
/// equal scalar compressions on their endpoints.
struct ConstraintGraph {
  std::vector<std::pair<std::size_t, std::size_t>> edges;   // strict pairs \ K
  std::vector<std::vector<std::size_t>> components;         // constrained nodes
  std::vector<std::size_t> free_nodes;                      // touch no edge
};
ConstraintGraph constraint_graph(const Algebra& a, const BlockIdeal& k);

/// Largest diagonal subspace F with F + K a Lie ideal: full blocks on free
/// nodes, one shared identity per constraint component.
struct MaximalAddend {
  Subspace addend;
  ConstraintGraph graph;
};
MaximalAddend maximal_addend(const Algebra& a, const BlockIdeal& k);

enum class AddendKind { Zero, Scalar, TraceZero, Full };
const char* addend_kind_name(AddendKind kind);

/// Symbolic form of a Lie ideal: the off-diagonal block ideal, a kind per
/// block, the partition of scalar blocks forced to share their scalar, and
/// the realized scalar tuples (one coordinate per block, trace/size).
/// Singleton blocks normalize to Scalar/Zero so descriptors stay unique.
struct LieIdealDescriptor {
  BlockIdeal k;
  std::vector<AddendKind> kinds;
  std::vector<std::vector<std::size_t>> linkage;
  Subspace scalar_tuples;
};

struct ClassifyRejection {
  std::string condition;
  std::optional<std::size_t> block;                          // 0-based
  std::optional<std::pair<std::size_t, std::size_t>> edge;   // 0-based
};

struct ClassifyResult {
  std::optional<LieIdealDescriptor> descriptor;
  std::optional<ClassifyRejection> rejection;
  bool accepted() const { return descriptor.has_value(); }
};

/// Decides whether G is a Lie addend for k, i.e. whether G + span(k) is a
/// Lie ideal, via the structural conditions: every block compression is one
/// of {0, scalars, trace zero, full}; trace-zero parts of compressions lie
/// in G itself; constraint edges see equal scalars. G must sit inside the
/// diagonal part.
ClassifyResult classify_addend(const Algebra& a, const BlockIdeal& k, const Subspace& g);

/// Rebuild the addend (and the whole Lie ideal) a descriptor denotes.
Subspace addend_subspace(const Algebra& a, const LieIdealDescriptor& desc);
Subspace lie_ideal_subspace(const Algebra& a, const LieIdealDescriptor& desc);

/// Bracket of the matrix unit e_ij with x, computed by row/column surgery in
/// flat coordinates.
std::vector<Rational> bracket_unit_vec(std::size_t n, std::size_t i, std::size_t j,
                                       const std::vector<Rational>& x);

} // namespace lil

#endif
