#include "lil/json_io.hpp"

#include "lil/error.hpp"

#include <algorithm>
#include <utility>

namespace lil {

namespace {

[[noreturn]] void bad(const std::string& what) { fail(Status::Parse, what); }

std::vector<Rational> row_from_json(const Json& row, std::size_t expected) {
  if (!row.is_array() || row.size() != expected) {
    bad("expected an array of " + std::to_string(expected) + " rational strings");
  }
  std::vector<Rational> out;
  out.reserve(expected);
  for (const auto& cell : row) {
    if (cell.is_number_integer()) {
      out.emplace_back(static_cast<long>(cell.get<long long>()));
    } else if (cell.is_string()) {
      out.push_back(rational_from_string(cell.get<std::string>()));
    } else {
      bad("matrix entries must be strings like \"3/4\" (or plain integers)");
    }
  }
  return out;
}

} // namespace

Json subspace_to_json(const Subspace& s) {
  Json basis = Json::array();
  for (const auto& row : s.basis()) {
    Json jrow = Json::array();
    for (const auto& q : row) jrow.push_back(rational_to_string(q));
    basis.push_back(std::move(jrow));
  }
  return Json{{"ambient_dim", s.ambient_dim()}, {"dim", s.dim()}, {"basis", basis}};
}

Subspace subspace_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("ambient_dim") || !j.contains("basis")) {
    bad("subspace JSON needs {ambient_dim, basis}");
  }
  const std::size_t ambient = j.at("ambient_dim").get<std::size_t>();
  std::vector<std::vector<Rational>> rows;
  for (const auto& row : j.at("basis")) rows.push_back(row_from_json(row, ambient));
  return Subspace::span(rows, ambient);
}

Json mat_to_json(const Mat& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(rational_to_string(m.at(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Mat mat_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) bad("matrix JSON must be a non-empty array of rows");
  const std::size_t rows = j.size();
  const std::size_t cols = j.at(0).is_array() ? j.at(0).size() : 0;
  if (cols == 0) bad("matrix JSON must be a non-empty array of rows");
  Mat m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    const auto row = row_from_json(j.at(i), cols);
    for (std::size_t c = 0; c < cols; ++c) m.at(i, c) = row[c];
  }
  return m;
}

std::vector<Mat> gens_from_json(const Json& j, std::size_t expected_n) {
  const Json* list = nullptr;
  if (j.is_array()) {
    list = &j;
  } else if (j.is_object() && j.contains("gens")) {
    if (j.contains("n") && j.at("n").get<std::size_t>() != expected_n) {
      bad("generator size does not match the pattern");
    }
    list = &j.at("gens");
  } else {
    bad("generators JSON must be a list of matrices or {n, gens}");
  }
  std::vector<Mat> out;
  for (const auto& entry : *list) {
    Mat m = mat_from_json(entry);
    if (m.rows() != expected_n || m.cols() != expected_n) {
      bad("generator size does not match the pattern");
    }
    out.push_back(std::move(m));
  }
  return out;
}

Json block_structure_to_json(const Algebra& a) {
  Json blocks = Json::array();
  for (const auto& blk : a.blocks().blocks) {
    Json b = Json::array();
    for (std::size_t i : blk) b.push_back(i + 1);
    blocks.push_back(std::move(b));
  }
  Json order = Json::array();
  for (std::size_t i : a.blocks().order) order.push_back(i + 1);
  Json poset = Json::array();
  for (const auto& [u, v] : a.blocks().poset) poset.push_back(Json::array({u + 1, v + 1}));

  const auto [diag, off] = a.diag_offdiag_split();
  return Json{{"blocks", blocks},   {"order", order},        {"poset", poset},
              {"dimA", a.dim()},    {"dimE", diag.dim()},    {"dimS", off.dim()}};
}

Json block_ideal_to_json(const Algebra& a, const BlockIdeal& k) {
  Json pairs = Json::array();
  for (const auto& [u, v] : k.pairs) pairs.push_back(Json::array({u + 1, v + 1}));
  return Json{{"block_pairs", pairs}, {"dim", ideal_subspace(a, k).dim()}};
}

BlockIdeal block_ideal_from_json(const Algebra& a, const Json& j) {
  const Json& pairs = j.is_object() && j.contains("block_pairs") ? j.at("block_pairs") : j;
  if (!pairs.is_array()) bad("block ideal JSON must be a list of [u, v] pairs");
  BlockIdeal k;
  for (const auto& pr : pairs) {
    if (!pr.is_array() || pr.size() != 2) bad("block pair must be [u, v]");
    const long u = pr.at(0).get<long>();
    const long v = pr.at(1).get<long>();
    if (u < 1 || v < 1) bad("block ids are 1-based");
    k.pairs.emplace_back(static_cast<std::size_t>(u - 1), static_cast<std::size_t>(v - 1));
  }
  std::sort(k.pairs.begin(), k.pairs.end());
  (void)a;
  return k;
}

Json lie_witness_to_json(const LieWitness& w) {
  return Json{{"unit", Json::array({w.unit.first + 1, w.unit.second + 1})},
              {"basis_index", w.basis_index + 1}};
}

Json constraint_graph_to_json(const ConstraintGraph& cg) {
  Json edges = Json::array();
  for (const auto& [u, v] : cg.edges) edges.push_back(Json::array({u + 1, v + 1}));
  Json comps = Json::array();
  for (const auto& comp : cg.components) {
    Json c = Json::array();
    for (std::size_t u : comp) c.push_back(u + 1);
    comps.push_back(std::move(c));
  }
  Json free = Json::array();
  for (std::size_t u : cg.free_nodes) free.push_back(u + 1);
  return Json{{"edges", edges}, {"components", comps}, {"free_nodes", free}};
}

Json descriptor_to_json(const Algebra& a, const LieIdealDescriptor& d) {
  Json kinds = Json::array();
  for (const auto kind : d.kinds) kinds.push_back(addend_kind_name(kind));
  Json linkage = Json::array();
  for (const auto& group : d.linkage) {
    Json g = Json::array();
    for (std::size_t u : group) g.push_back(u + 1);
    linkage.push_back(std::move(g));
  }
  return Json{{"ideal", block_ideal_to_json(a, d.k)},
              {"kinds", kinds},
              {"linkage", linkage},
              {"scalar_tuples", subspace_to_json(d.scalar_tuples)}};
}

Json classify_to_json(const Algebra& a, const ClassifyResult& r) {
  if (r.accepted()) {
    return Json{{"accepted", true}, {"descriptor", descriptor_to_json(a, *r.descriptor)}};
  }
  Json rej{{"condition", r.rejection->condition}};
  if (r.rejection->block) rej["block"] = *r.rejection->block + 1;
  if (r.rejection->edge) {
    rej["edge"] = Json::array({r.rejection->edge->first + 1, r.rejection->edge->second + 1});
  }
  return Json{{"accepted", false}, {"rejection", rej}};
}

Json sim_report_to_json(const SimReport& r) {
  Json failures = Json::array();
  for (const auto& f : r.failures) {
    failures.push_back(Json{{"trial", f.trial},
                            {"basis_index", f.basis_index + 1},
                            {"stage", f.stage}});
  }
  return Json{{"trials", r.trials},
              {"seed", r.seed},
              {"split_checked", r.split_checked},
              {"failures", failures},
              {"ok", r.ok()}};
}

Json lemma_row_report_to_json(const LemmaRowReport& r) {
  Json failures = Json::array();
  for (const auto& f : r.failures) {
    failures.push_back(Json{{"index", f.basis_index},
                            {"projection", f.projection + 1},
                            {"random_trial", f.random_trial}});
  }
  return Json{{"deterministic_checks", r.deterministic_checks},
              {"trials", r.trials},
              {"seed", r.seed},
              {"identity_exact", r.identity_exact},
              {"failures", failures},
              {"ok", r.ok()}};
}

Json inductivity_report_to_json(const InductivityReport& r) {
  Json levels = Json::array();
  for (const auto& l : r.levels) {
    levels.push_back(Json{{"level", l.level + 1},
                          {"image_dim", l.image_dim},
                          {"ideal_dim", l.ideal_dim},
                          {"unit_spanned", l.unit_spanned},
                          {"contained_in_next", l.contained_in_next}});
  }
  return Json{{"levels", levels}, {"reaches_top", r.reaches_top}, {"ok", r.ok()}};
}

Json lieform_report_to_json(const LieFormReport& r) {
  return Json{{"ideal_dim", r.ideal_dim},
              {"diag_dim", r.diag_dim},
              {"offdiag_dim", r.offdiag_dim},
              {"k_full_blocks", r.k_full_blocks},
              {"k_inductive", r.k_inductive},
              {"addend_inside_maximal", r.addend_inside_maximal},
              {"addend_classified", r.addend_classified},
              {"maximal_plus_k_is_lie_ideal", r.maximal_plus_k_is_lie_ideal},
              {"inductivity", inductivity_report_to_json(r.inductivity)},
              {"ok", r.ok()}};
}

Json norm_bound_report_to_json(const NormBoundReport& r) {
  return Json{{"samples", r.samples},
              {"max_interior_excess", r.max_interior_excess},
              {"max_boundary_deviation", r.max_boundary_deviation},
              {"violations", r.violations},
              {"ok", r.ok()}};
}

Json inverse_path_report_to_json(const InversePathReport& r) {
  return Json{{"samples", r.samples},
              {"max_residual", r.max_residual},
              {"tolerance", r.tolerance},
              {"condition", r.condition},
              {"ok", r.ok()}};
}

Json csl_drift_report_to_json(const CslDriftReport& r) {
  return Json{{"samples", r.samples},
              {"max_residual", r.max_residual},
              {"tolerance", r.tolerance},
              {"ok", r.ok()}};
}

namespace {

Pattern pattern_from_level_json(const Json& level) {
  if (level.is_object() && level.contains("text")) {
    return Pattern::parse(level.at("text").get<std::string>());
  }
  if (level.is_object() && level.contains("file")) {
    bad("tower level file references must be resolved before parsing");
  }
  if (level.is_array()) {
    // Rows-of-strings form: ["**", ".*"].
    std::string text = "n " + std::to_string(level.size()) + "\n";
    for (const auto& row : level) text += row.get<std::string>() + "\n";
    return Pattern::parse(text);
  }
  bad("tower level must be {\"text\": ...} or an array of rows");
}

Embedding embedding_from_unit_map_json(const Pattern& source, const Pattern& target,
                                       const Json& spec) {
  Embedding e;
  e.source = source;
  e.target = target;
  const auto pairs = source.entries();
  e.unit_map.assign(pairs.size(), {});
  std::vector<bool> seen(pairs.size(), false);
  for (const auto& entry : spec) {
    if (!entry.is_object() || !entry.contains("source") || !entry.contains("targets")) {
      bad("unit map entries need {source: [i,j], targets: [[u,v],...]}");
    }
    const auto& src = entry.at("source");
    const std::size_t i = src.at(0).get<std::size_t>() - 1;
    const std::size_t j = src.at(1).get<std::size_t>() - 1;
    const auto it = std::find(pairs.begin(), pairs.end(), std::make_pair(i, j));
    if (it == pairs.end()) bad("unit map names a pair outside the source pattern");
    const std::size_t idx = static_cast<std::size_t>(it - pairs.begin());
    if (seen[idx]) bad("unit map repeats a source pair");
    seen[idx] = true;
    for (const auto& t : entry.at("targets")) {
      e.unit_map[idx].emplace_back(t.at(0).get<std::size_t>() - 1,
                                   t.at(1).get<std::size_t>() - 1);
    }
    std::sort(e.unit_map[idx].begin(), e.unit_map[idx].end());
  }
  for (std::size_t idx = 0; idx < pairs.size(); ++idx) {
    if (!seen[idx]) bad("unit map misses a source pair");
  }
  return e;
}

} // namespace

Tower tower_from_json(const Json& j, std::size_t max_n) {
  if (!j.is_object() || !j.contains("levels") || !j.at("levels").is_array() ||
      j.at("levels").empty()) {
    bad("tower JSON needs a non-empty levels array");
  }
  const Json& levels = j.at("levels");
  const Json embeddings = j.contains("embeddings") ? j.at("embeddings") : Json::array();

  Tower tower{Algebra(pattern_from_level_json(levels.at(0)))};
  for (std::size_t q = 0; q < embeddings.size(); ++q) {
    const Json& step = embeddings.at(q);
    const Algebra& current = tower.top();
    if (step.is_object() && step.contains("multiplicity")) {
      Embedding e = standard_embedding(current, step.at("multiplicity").get<std::size_t>(),
                                       max_n);
      if (q + 1 < levels.size()) {
        const Pattern stated = pattern_from_level_json(levels.at(q + 1));
        if (!(stated == e.target)) {
          bad("stated level " + std::to_string(q + 2) +
              " does not match the refined pattern");
        }
      }
      tower.add_step(std::move(e));
    } else if (step.is_object() && step.contains("unit_map")) {
      if (q + 1 >= levels.size()) {
        bad("explicit unit maps need the next level's pattern");
      }
      const Pattern target = pattern_from_level_json(levels.at(q + 1));
      if (target.size() > max_n) {
        fail(Status::TooLarge, "tower level exceeds the size cap");
      }
      tower.add_step(
          embedding_from_unit_map_json(current.pattern(), target, step.at("unit_map")));
    } else {
      bad("embedding must give a multiplicity or a unit_map");
    }
  }
  return tower;
}

} // namespace lil
