#ifndef LIL_JSON_IO_HPP
#define LIL_JSON_IO_HPP

#include "lil/algebra.hpp"
#include "lil/ideal.hpp"
#include "lil/lie.hpp"
#include "lil/mat.hpp"
#include "lil/nest.hpp"
#include "lil/similarity.hpp"
#include "lil/subspace.hpp"
#include "lil/tower.hpp"

#include <json.hpp>

#include <cstddef>
#include <string>
#include <vector>

namespace lil {

using Json = nlohmann::json;

// Rationals travel as strings ("p" or "p/q"); indices and block ids are
// 1-based in every JSON surface.

Json subspace_to_json(const Subspace& s);
Subspace subspace_from_json(const Json& j);

Json mat_to_json(const Mat& m);
Mat mat_from_json(const Json& j);

/// {"n": size, "gens": [matrix, ...]} or a bare array of matrices.
std::vector<Mat> gens_from_json(const Json& j, std::size_t expected_n);

/// {blocks, order, poset, dimA, dimE, dimS} for `validate`.
Json block_structure_to_json(const Algebra& a);

Json block_ideal_to_json(const Algebra& a, const BlockIdeal& k);
BlockIdeal block_ideal_from_json(const Algebra& a, const Json& j);

Json lie_witness_to_json(const LieWitness& w);
Json descriptor_to_json(const Algebra& a, const LieIdealDescriptor& d);
Json classify_to_json(const Algebra& a, const ClassifyResult& r);
Json constraint_graph_to_json(const ConstraintGraph& cg);
Json sim_report_to_json(const SimReport& r);
Json lemma_row_report_to_json(const LemmaRowReport& r);
Json inductivity_report_to_json(const InductivityReport& r);
Json lieform_report_to_json(const LieFormReport& r);
Json norm_bound_report_to_json(const NormBoundReport& r);
Json inverse_path_report_to_json(const InversePathReport& r);
Json csl_drift_report_to_json(const CslDriftReport& r);

/// Tower description:
///   {"levels": [{"text": "<.pat content>"} , ...],
///    "embeddings": [{"multiplicity": 2} |
///                   {"unit_map": [{"source": [i,j], "targets": [[u,v],..]},..]}]}
/// Levels beyond the first may be omitted for multiplicity embeddings (the
/// refined pattern is derived); when present they are checked against the
/// derived one. Explicit unit maps need the next level's pattern. File
/// references must be resolved to "text" by the caller.
Tower tower_from_json(const Json& j, std::size_t max_n);

} // namespace lil

#endif
