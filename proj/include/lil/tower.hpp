#ifndef LIL_TOWER_HPP
#define LIL_TOWER_HPP

#include "lil/algebra.hpp"
#include "lil/ideal.hpp"
#include "lil/lie.hpp"
#include "lil/rng.hpp"
#include "lil/subspace.hpp"

#include <cstdint>
#include <cstddef>
#include <utility>
#include <vector>

namespace lil {

/// Unital injective homomorphism between digraph algebras sending each
/// source matrix unit to a sum of target matrix units. unit_map is aligned
/// with the source pattern's entries() order.
struct Embedding {
  Pattern source{0};
  Pattern target{0};
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> unit_map;

  /// Linear extension of the unit map to arbitrary source-sized matrices.
  Mat apply(const Mat& x) const;
};

/// Checks the homomorphism property, unitality, injectivity, support inside
/// the target pattern, and diagonal units landing on diagonal sums. Throws
/// Status::BadArgument with a description on violation.
void validate_embedding(const Embedding& e);

/// Multiplicity-m refinement: source index i splits into target indices
/// i*m .. i*m+m-1, a unit e_ij maps to the sum over copies e_{(i,r),(j,r)}.
/// Within a diagonal block the copies are ordered (entries only for r <= s),
/// so triangular sources refine to triangular targets — T_k lands in T_{km}
/// with the image of a unit hitting one entry per copy. Throws
/// Status::TooLarge when the target size exceeds max_n.
Embedding standard_embedding(const Algebra& source, std::size_t multiplicity,
                             std::size_t max_n = 12);

Embedding compose(const Embedding& first, const Embedding& second);

/// A finite chain of digraph algebras with embeddings between consecutive
/// levels. Level 0 is the smallest; the last level is the "top".
class Tower {
public:
  explicit Tower(Algebra base);

  /// Appends the target of `step` as a new level; step.source must match the
  /// current top pattern.
  void add_step(Embedding step);

  std::size_t level_count() const { return levels_.size(); }
  const Algebra& level(std::size_t q) const { return levels_[q]; }
  const Algebra& top() const { return levels_.back(); }

  /// Image of a level-q element at the top (identity when q is the top).
  Mat embed_to_top(std::size_t q, const Mat& x) const;

  /// Images at the top of the level-q minimal diagonal projections e_ii.
  std::vector<Mat> diag_projections(std::size_t q) const;

  /// Compression by the level-q diagonal projections: sum_i d_i x d_i.
  /// Idempotent; refines as q grows; at the top it extracts the diagonal.
  Mat pi_level(std::size_t q, const Mat& x_top) const;

private:
  std::vector<Algebra> levels_;
  std::vector<Embedding> steps_;    // steps_[q]: level q -> level q+1
  std::vector<Embedding> to_top_;   // composite level q -> top
  void rebuild_composites();
};

struct LemmaRowFailure {
  std::size_t basis_index; // or trial index for random trials
  std::size_t projection;
  bool random_trial;
};

/// For every basis element f of the Lie ideal and every minimal diagonal
/// projection d: d f - d f d stays in the ideal, and equals the averaged
/// bracket expression (1/2)([d,f] + sum_{j != i} [d_i, [f, d_j]]) exactly.
/// Random trials re-run both checks on random members of the ideal.
struct LemmaRowReport {
  std::size_t deterministic_checks = 0;
  int trials = 0;
  std::uint64_t seed = 0;
  std::vector<LemmaRowFailure> failures;
  bool identity_exact = true; // the averaged expression matched everywhere
  bool ok() const { return failures.empty() && identity_exact; }
};
LemmaRowReport lemma_row_check(const Algebra& a, const Subspace& lie_ideal,
                               const std::vector<Mat>& diag_projections, int trials,
                               std::uint64_t seed);

struct InductivityLevel {
  std::size_t level;
  std::size_t image_dim;
  std::size_t ideal_dim;      // dim of K meeting the level image
  bool unit_spanned;          // that meet is spanned by embedded level units
  bool contained_in_next;
};

/// K at the top restricted to each level: the restriction must be spanned by
/// the level's embedded matrix units that fall inside K, must grow along the
/// tower, and must reach K at the top.
struct InductivityReport {
  std::vector<InductivityLevel> levels;
  bool reaches_top = false;
  bool ok() const;
};
InductivityReport inductivity_check(const Tower& tower, const BlockIdeal& k_top);

/// Full structure pipeline at the top: generate, decompose, verify the
/// off-diagonal part is an inductive full-block ideal, the diagonal part
/// classifies as an addend inside the maximal one, and the maximal addend
/// plus K is itself a Lie ideal.
struct LieFormReport {
  std::size_t ideal_dim = 0;
  std::size_t diag_dim = 0;
  std::size_t offdiag_dim = 0;
  bool k_full_blocks = false;
  bool k_inductive = false;
  bool addend_inside_maximal = false;
  bool addend_classified = false;
  bool maximal_plus_k_is_lie_ideal = false;
  InductivityReport inductivity;
  bool ok() const {
    return k_full_blocks && k_inductive && addend_inside_maximal && addend_classified &&
           maximal_plus_k_is_lie_ideal;
  }
};
LieFormReport theorem_lieform_check(const Tower& tower, const std::vector<Mat>& generators);

} // namespace lil

#endif
