#include "lil.h"

#include "lil/algebra.hpp"
#include "lil/error.hpp"
#include "lil/ideal.hpp"
#include "lil/json_io.hpp"
#include "lil/lie.hpp"
#include "lil/nest.hpp"
#include "lil/similarity.hpp"
#include "lil/subspace.hpp"
#include "lil/suite.hpp"
#include "lil/tower.hpp"

#include <algorithm>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>

using namespace lil;

struct lil_pattern {
  Algebra algebra;
};

namespace {

thread_local std::string g_last_error;

constexpr std::size_t kDefaultMaxPairs = 24;
constexpr std::size_t kDefaultMaxN = 12;

char* copy_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

lil_status to_status(Status s) { return static_cast<lil_status>(static_cast<int>(s)); }

/// Runs the body, converting exceptions into status codes + last-error text.
template <typename Fn>
lil_status guarded(Fn&& body) {
  try {
    body();
    return LIL_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return to_status(e.status());
  } catch (const Json::exception& e) {
    g_last_error = e.what();
    return LIL_ERR_PARSE;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return LIL_ERR_BAD_ARGUMENT;
  }
}

lil_status emit(char** json_out, const Json& j) {
  if (!json_out) {
    g_last_error = "json_out must not be null";
    return LIL_ERR_BAD_ARGUMENT;
  }
  *json_out = copy_string(j.dump());
  return LIL_OK;
}

const Algebra& need(const lil_pattern* p) {
  if (!p) fail(Status::BadArgument, "pattern handle is null");
  return p->algebra;
}

std::string need_text(const char* s, const char* what) {
  if (!s) fail(Status::BadArgument, std::string(what) + " must not be null");
  return s;
}

} // namespace

extern "C" {

const char* lil_version(void) { return "0.1.0"; }

const char* lil_last_error(void) { return g_last_error.c_str(); }

void lil_string_free(char* s) { delete[] s; }

lil_status lil_pattern_parse(const char* text, lil_pattern** out) {
  return guarded([&] {
    if (!out) fail(Status::BadArgument, "output handle must not be null");
    Pattern p = Pattern::parse(need_text(text, "pattern text"));
    *out = new lil_pattern{Algebra(std::move(p))};
  });
}

lil_status lil_pattern_read_file(const char* path, lil_pattern** out) {
  return guarded([&] {
    if (!out) fail(Status::BadArgument, "output handle must not be null");
    std::ifstream in(need_text(path, "path"));
    if (!in) fail(Status::Parse, "cannot open pattern file '" + std::string(path) + "'");
    std::ostringstream text;
    text << in.rdbuf();
    Pattern p = Pattern::parse(text.str());
    *out = new lil_pattern{Algebra(std::move(p))};
  });
}

void lil_pattern_free(lil_pattern* p) { delete p; }

int lil_pattern_size(const lil_pattern* p) {
  return p ? static_cast<int>(p->algebra.n()) : 0;
}

lil_status lil_validate(const lil_pattern* p, char** json_out) {
  return guarded([&] { emit(json_out, block_structure_to_json(need(p))); });
}

lil_status lil_ideals_enumerate(const lil_pattern* p, int max_pairs, char** json_out) {
  return guarded([&] {
    const Algebra& a = need(p);
    const std::size_t cap = max_pairs > 0 ? static_cast<std::size_t>(max_pairs)
                                          : kDefaultMaxPairs;
    Json list = Json::array();
    for (const BlockIdeal& k : enumerate_offdiag_ideals(a, cap)) {
      list.push_back(block_ideal_to_json(a, k));
    }
    emit(json_out, Json{{"count", list.size()}, {"ideals", list}});
  });
}

lil_status lil_ideals_close(const lil_pattern* p, const char* seed_pairs, char** json_out) {
  return guarded([&] {
    const Algebra& a = need(p);
    const auto seed = parse_pair_list(need_text(seed_pairs, "seed pairs"));
    emit(json_out, block_ideal_to_json(a, ideal_closure(a, seed)));
  });
}

lil_status lil_lie_check(const lil_pattern* p, const char* subspace_json, int ambient,
                         char** json_out) {
  return guarded([&] {
    const Algebra& a = need(p);
    const Subspace s =
        subspace_from_json(Json::parse(need_text(subspace_json, "subspace JSON")));
    const LieCheck check = is_lie_ideal(a, s, ambient != 0);
    Json out{{"is_lie_ideal", check.ok}, {"dim", s.dim()}};
    if (!check.ok) {
      out["witness"] = lie_witness_to_json(*check.witness);
    } else if (ambient == 0) {
      const Decomposition dec = decompose(a, s);
      out["ideal"] = block_ideal_to_json(a, dec.k_blocks);
      out["classification"] = classify_to_json(a, classify_addend(a, dec.k_blocks, dec.diag));
    }
    emit(json_out, out);
  });
}

lil_status lil_lie_generate(const lil_pattern* p, const char* gens_json, int ambient,
                            char** json_out) {
  return guarded([&] {
    const Algebra& a = need(p);
    const auto gens = gens_from_json(Json::parse(need_text(gens_json, "generators JSON")), a.n());
    const Subspace L = lie_generate(a, gens, ambient != 0);
    Json out{{"subspace", subspace_to_json(L)}};
    if (ambient == 0) {
      const Decomposition dec = decompose(a, L);
      out["diag_dim"] = dec.diag.dim();
      out["ideal"] = block_ideal_to_json(a, dec.k_blocks);
    }
    emit(json_out, out);
  });
}

lil_status lil_lie_decompose(const lil_pattern* p, const char* subspace_json,
                             char** json_out) {
  return guarded([&] {
    const Algebra& a = need(p);
    const Subspace s =
        subspace_from_json(Json::parse(need_text(subspace_json, "subspace JSON")));
    const Decomposition dec = decompose(a, s);
    emit(json_out, Json{{"diag", subspace_to_json(dec.diag)},
                        {"offdiag", subspace_to_json(dec.offdiag)},
                        {"ideal", block_ideal_to_json(a, dec.k_blocks)},
                        {"classification",
                         classify_to_json(a, classify_addend(a, dec.k_blocks, dec.diag))}});
  });
}

lil_status lil_lie_max_addend(const lil_pattern* p, const char* ideal_pairs,
                              char** json_out) {
  return guarded([&] {
    const Algebra& a = need(p);
    BlockIdeal k;
    k.pairs = parse_pair_list(need_text(ideal_pairs, "ideal pairs"));
    std::sort(k.pairs.begin(), k.pairs.end());
    if (!(ideal_closure(a, k.pairs) == k)) {
      fail(Status::BadArgument, "block set is not an up-closed off-diagonal ideal");
    }
    const MaximalAddend ma = maximal_addend(a, k);
    const Subspace L = sum(ma.addend, ideal_subspace(a, k));
    emit(json_out, Json{{"addend", subspace_to_json(ma.addend)},
                        {"constraint_graph", constraint_graph_to_json(ma.graph)},
                        {"lie_ideal_dim", L.dim()},
                        {"is_lie_ideal", is_lie_ideal(a, L).ok}});
  });
}

lil_status lil_sim_check(const lil_pattern* p, const char* lie_json, int trials,
                         uint64_t seed, char** json_out) {
  return guarded([&] {
    const Algebra& a = need(p);
    const Subspace L = subspace_from_json(Json::parse(need_text(lie_json, "subspace JSON")));
    const SimReport report = check_similarity_invariance(a, L, trials, seed);
    emit(json_out, sim_report_to_json(report));
  });
}

lil_status lil_tower_run(const char* tower_json, const char* gens_json, uint64_t seed,
                         int max_n, char** json_out) {
  return guarded([&] {
    const std::size_t cap = max_n > 0 ? static_cast<std::size_t>(max_n) : kDefaultMaxN;
    const Tower tower =
        tower_from_json(Json::parse(need_text(tower_json, "tower JSON")), cap);
    const Algebra& top = tower.top();

    std::vector<Mat> gens;
    if (gens_json) {
      gens = gens_from_json(Json::parse(std::string(gens_json)), top.n());
    } else {
      Rng rng(seed);
      for (int g = 0; g < 2; ++g) gens.push_back(random_element(top, rng));
    }

    const LieFormReport pipeline = theorem_lieform_check(tower, gens);

    // Row-lemma trials against every level's diagonal projections.
    const Subspace L = lie_generate(top, gens);
    Json lemma = Json::array();
    for (std::size_t q = 0; q < tower.level_count(); ++q) {
      const LemmaRowReport lr =
          lemma_row_check(top, L, tower.diag_projections(q), 25, seed + q);
      Json entry = lemma_row_report_to_json(lr);
      entry["level"] = q + 1;
      lemma.push_back(std::move(entry));
    }

    Json levels = Json::array();
    for (std::size_t q = 0; q < tower.level_count(); ++q) {
      levels.push_back(Json{{"n", tower.level(q).n()}, {"dim", tower.level(q).dim()}});
    }
    emit(json_out, Json{{"levels", levels},
                        {"seed", seed},
                        {"pipeline", lieform_report_to_json(pipeline)},
                        {"row_lemma", lemma},
                        {"ok", pipeline.ok()}});
  });
}

lil_status lil_nest_check(const char* atoms_text, int samples, uint64_t seed,
                          const char* csl_pattern_text, char** json_out) {
  return guarded([&] {
    AtomPartition atoms;
    std::istringstream in(need_text(atoms_text, "atoms"));
    std::string tok;
    while (std::getline(in, tok, ',')) {
      const long v = std::stol(tok);
      if (v <= 0) fail(Status::BadArgument, "atom sizes must be positive");
      atoms.sizes.push_back(static_cast<std::size_t>(v));
    }
    if (atoms.sizes.empty()) fail(Status::BadArgument, "atom list is empty");

    Rng rng(seed);
    const CMatrix a = random_block_upper(atoms, rng, nullptr, /*make_invertible=*/true);

    double worst_boundary = 0.0;
    for (int t = 0; t < 8; ++t) {
      const double theta = 2.0 * 3.14159265358979323846 * (t + 0.5) / 8.0;
      const double r = boundary_conjugation_residual(atoms, a, theta) / a.norm();
      worst_boundary = std::max(worst_boundary, r);
    }

    const NormBoundReport norms = norm_bound_check(atoms, a, samples);

    CMatrix b = a.inverse();
    for (std::size_t i = 0; i < atoms.total(); ++i) {
      for (std::size_t j = 0; j < atoms.total(); ++j) {
        if (atoms.atom_of(i) > atoms.atom_of(j)) b(i, j) = 0.0;
      }
    }
    const InversePathReport inverse = inverse_path_check(atoms, a, b, samples);

    Json out{{"seed", seed},
             {"samples", samples},
             {"max_boundary_residual_rel", worst_boundary},
             {"boundary_ok", worst_boundary <= 1e-10},
             {"norm_bound", norm_bound_report_to_json(norms)},
             {"inverse_path", inverse_path_report_to_json(inverse)}};

    bool ok = norms.ok() && inverse.ok() && worst_boundary <= 1e-10;
    if (csl_pattern_text) {
      const Algebra mask{Pattern::parse(csl_pattern_text)};
      const AtomPartition mask_atoms = atoms_of_pattern(mask);
      if (mask_atoms.sizes != atoms.sizes) {
        fail(Status::BadArgument, "mask blocks do not match the atom list");
      }
      Rng gen_rng(seed + 1);
      const Subspace L = lie_generate(mask, {random_element(mask, gen_rng)});
      Rng drift_rng(seed + 2);
      const CslDriftReport drift =
          csl_conjugation_check(mask, mask_atoms, L, std::max(1, samples / 10), drift_rng);
      out["csl_drift"] = csl_drift_report_to_json(drift);
      out["csl_ideal_dim"] = L.dim();
      ok = ok && drift.ok();
    }
    out["ok"] = ok;
    emit(json_out, out);
  });
}

lil_status lil_suite_run(uint64_t seed, char** json_out) {
  return guarded([&] {
    // The report carries per-criterion pass flags; the caller decides how to
    // surface failures (the CLI exits nonzero when all_pass is false).
    emit(json_out, suite_report_to_json(run_acceptance_suite(seed)));
  });
}

} // extern "C"
