/* C interface to the Lie-ideal toolkit.
 *
 * Conventions:
 *  - every function returns a lil_status; LIL_OK means success;
 *  - on failure, lil_last_error() gives a thread-local message;
 *  - results are JSON documents in newly allocated strings the caller
 *    releases with lil_string_free();
 *  - patterns are opaque handles created by the parse functions and
 *    released with lil_pattern_free();
 *  - indices and block ids in all JSON and seed strings are 1-based.
 */
#ifndef LIL_H
#define LIL_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum lil_status {
  LIL_OK = 0,
  LIL_ERR_PARSE = 1,         /* malformed text or JSON input */
  LIL_ERR_PATTERN = 2,       /* pattern is not reflexive/transitive */
  LIL_ERR_DIMENSION = 3,     /* size mismatch */
  LIL_ERR_SUPPORT = 4,       /* element not supported on the pattern */
  LIL_ERR_SINGULAR = 5,      /* element not invertible in the algebra */
  LIL_ERR_NOT_LIE_IDEAL = 6, /* operation requires a Lie ideal */
  LIL_ERR_NOT_IN_ALGEBRA = 7,
  LIL_ERR_TOO_LARGE = 8,     /* combinatorial or size cap exceeded */
  LIL_ERR_ASSERTION = 9,     /* a verified mathematical property failed */
  LIL_ERR_BAD_ARGUMENT = 10
} lil_status;

typedef struct lil_pattern lil_pattern;

const char* lil_version(void);

/* Thread-local message describing the most recent failure in this thread. */
const char* lil_last_error(void);

void lil_string_free(char* s);

/* Pattern handles ---------------------------------------------------- */

/* Parses the .pat format and validates the algebra structure. */
lil_status lil_pattern_parse(const char* text, lil_pattern** out);
lil_status lil_pattern_read_file(const char* path, lil_pattern** out);
void lil_pattern_free(lil_pattern* p);
int lil_pattern_size(const lil_pattern* p);

/* Analysis ------------------------------------------------------------ */

/* Block structure: {blocks, order, poset, dimA, dimE, dimS}. */
lil_status lil_validate(const lil_pattern* p, char** json_out);

/* All off-diagonal ideals: a JSON list of {block_pairs, dim}. max_pairs <= 0
 * uses the default cap (24 strict block pairs). */
lil_status lil_ideals_enumerate(const lil_pattern* p, int max_pairs, char** json_out);

/* Up-closure of seed pairs like "(1,2);(2,3)" -> {block_pairs, dim}. */
lil_status lil_ideals_close(const lil_pattern* p, const char* seed_pairs, char** json_out);

/* subspace_json: {ambient_dim, basis: [["p/q", ...], ...]}.
 * Result: {is_lie_ideal, witness?, classification?}. With `ambient`
 * nonzero the subspace may live outside the algebra (a Lie subspace over
 * it). */
lil_status lil_lie_check(const lil_pattern* p, const char* subspace_json, int ambient,
                         char** json_out);

/* gens_json: {n, gens: [matrix, ...]} or a bare matrix list. Result:
 * {subspace, decomposition}. */
lil_status lil_lie_generate(const lil_pattern* p, const char* gens_json, int ambient,
                            char** json_out);

/* Result: {diag, offdiag, ideal, descriptor}. */
lil_status lil_lie_decompose(const lil_pattern* p, const char* subspace_json,
                             char** json_out);

/* ideal_pairs: "(1,3)" style list naming an up-closed off-diagonal block
 * set. Result: {addend, constraint_graph, lie_ideal_dim}. */
lil_status lil_lie_max_addend(const lil_pattern* p, const char* ideal_pairs,
                              char** json_out);

/* Conjugation trials on a Lie ideal: {trials, seed, failures, ok, ...}. */
lil_status lil_sim_check(const lil_pattern* p, const char* lie_json, int trials,
                         uint64_t seed, char** json_out);

/* tower_json: {levels: [...], embeddings: [...]} with pattern text inline
 * (file references must be resolved by the caller). gens_json may be NULL
 * to use seeded random generators at the top level. max_n <= 0 uses the
 * default size cap (12). */
lil_status lil_tower_run(const char* tower_json, const char* gens_json, uint64_t seed,
                         int max_n, char** json_out);

/* atoms: comma-separated sizes, e.g. "1,2,1". csl_pattern_text: optional
 * .pat content whose blocks must match the atoms; NULL for the full nest
 * truncation. */
lil_status lil_nest_check(const char* atoms, int samples, uint64_t seed,
                          const char* csl_pattern_text, char** json_out);

/* Runs the built-in verification suite; JSON report with one entry per
 * criterion. */
lil_status lil_suite_run(uint64_t seed, char** json_out);

#ifdef __cplusplus
}
#endif

#endif /* LIL_H */
