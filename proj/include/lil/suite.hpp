#ifndef LIL_SUITE_HPP
#define LIL_SUITE_HPP

#include "lil/algebra.hpp"
#include "lil/json_io.hpp"
#include "lil/rng.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace lil {

/// One verification criterion of the built-in suite: an exact or
/// statistically-thresholded property with its own data budget, reported
/// with timing and a details payload.
struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  double seconds = 0.0;
  Json details;
};

struct SuiteReport {
  std::uint64_t seed = 0;
  std::vector<CriterionResult> criteria;
  bool all_pass() const;
};

// The individual criteria. Each is self-contained and deterministic in the
// seed.
CriterionResult criterion_full_matrix_census(std::uint64_t seed);
CriterionResult criterion_decomposition(std::uint64_t seed);
CriterionResult criterion_similarity(std::uint64_t seed);
CriterionResult criterion_converse_detection(std::uint64_t seed);
CriterionResult criterion_telescoping(std::uint64_t seed);
CriterionResult criterion_ideal_counts();
CriterionResult criterion_tower_pipeline(std::uint64_t seed);
CriterionResult criterion_nest_path(std::uint64_t seed);
CriterionResult criterion_finite_scale_note();

SuiteReport run_acceptance_suite(std::uint64_t seed);
Json suite_report_to_json(const SuiteReport& report);

/// Every reflexive-transitive pattern of the given size (brute force; meant
/// for n <= 4).
std::vector<Pattern> all_valid_patterns(std::size_t n);

/// Random preorder: random sparse relation, then reflexive-transitive
/// closure.
Pattern random_preorder(std::size_t n, Rng& rng);

} // namespace lil

#endif
