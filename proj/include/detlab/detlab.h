#ifndef DETLAB_H
#define DETLAB_H

/*
 * detlab - exact determinant laboratory.
 *
 * C interface to the exact-arithmetic core: identity registry, matrix
 * builders, determinant engines, closed-form evaluators, constant-term and
 * moment-integral checks, batch verification, and the product-formula
 * guesser.
 *
 * Conventions:
 *   - every function returns a detlab_status; results come back through out
 *     parameters;
 *   - all returned strings are NUL-terminated, allocated by the library, and
 *     must be released with detlab_string_free;
 *   - exact values render in canonical text form (integers, num/den
 *     rationals, or polynomial expressions) and re-parse to equal values;
 *   - handles are opaque; registry handles may be shared across threads,
 *     matrix handles must not be used concurrently.
 */

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum detlab_status {
    DETLAB_OK = 0,
    DETLAB_ERR_INVALID_ARGUMENT = 1, /* null pointer, bad enum, bad handle   */
    DETLAB_ERR_UNKNOWN_IDENTITY = 2,
    DETLAB_ERR_DOMAIN = 3,           /* parameter/precondition violation     */
    DETLAB_ERR_PARSE = 4,            /* malformed catalog/config/sequence    */
    DETLAB_ERR_INTERNAL = 5,         /* exactness invariant broke: a bug     */
    DETLAB_ERR_IO = 6,
    DETLAB_ERR_NO_FIT = 7            /* guesser found no product formula     */
} detlab_status;

typedef struct detlab_registry detlab_registry;
typedef struct detlab_matrix detlab_matrix;

const char* detlab_version(void);

/* Thread-local message for the last failing call in this thread. */
const char* detlab_last_error(void);

void detlab_string_free(char* s);

/* ---- registry ------------------------------------------------------- */

detlab_status detlab_registry_open_default(detlab_registry** out);
detlab_status detlab_registry_open_file(const char* catalog_path,
                                        detlab_registry** out);
void detlab_registry_close(detlab_registry* reg);

detlab_status detlab_registry_count(const detlab_registry* reg, size_t* out);
/* Newline-separated identity ids, in catalog order. */
detlab_status detlab_registry_ids(const detlab_registry* reg, char** out);
/* The identity's catalog record (one line, catalog grammar). */
detlab_status detlab_identity_info(const detlab_registry* reg, const char* id,
                                   char** out);

/* ---- matrices and determinants -------------------------------------- */

/* params: comma-separated "name=value" assignments, or NULL/"" for none. */
detlab_status detlab_build(const detlab_registry* reg, const char* id, long n,
                           const char* params, detlab_matrix** out);
void detlab_matrix_free(detlab_matrix* m);
detlab_status detlab_matrix_size(const detlab_matrix* m, size_t* out);
detlab_status detlab_matrix_entry(const detlab_matrix* m, size_t i, size_t j,
                                  char** out);
/* Aligned multi-line rendering. */
detlab_status detlab_matrix_render(const detlab_matrix* m, char** out);

/* engine: "bareiss" or "laplace" (laplace is guarded to n <= 8). */
detlab_status detlab_det(const detlab_matrix* m, const char* engine, char** out);

/* Dodgson condensation for shiftable families; reports the zero-divisor
 * fallback count. */
detlab_status detlab_det_condensation(const detlab_registry* reg, const char* id,
                                      long n, const char* params, char** det_out,
                                      long* fallbacks_out);

/* Residual check of the condensation identity with all determinants computed
 * by elimination; *violations_out must stay 0. */
detlab_status detlab_dodgson_residual(const detlab_registry* reg, const char* id,
                                      const char* params, long n_max, long shift_max,
                                      long* cells_out, long* violations_out);

/* ---- closed forms ---------------------------------------------------- */

detlab_status detlab_rhs(const detlab_registry* reg, const char* id, long n,
                         const char* params, char** out);
/* Pairwise comparison of all stored forms up to n_max; newline-separated
 * lines plus *all_match_out. */
detlab_status detlab_rhs_cross_check(const detlab_registry* reg, const char* id,
                                     long n_max, char** report_out,
                                     int* all_match_out);
detlab_status detlab_box_product(long a, long b, long c, char** out);

/* ---- constant terms and integrals ------------------------------------ */

detlab_status detlab_dyson_ct(long n, long alpha, char** out);
detlab_status detlab_v2_coefficient(long n, char** out);
detlab_status detlab_ct_representation(long i, long j, long weight, int* ok_out,
                                       char** value_out);
detlab_status detlab_selberg(long n, long alpha, long beta, char** out);
detlab_status detlab_binomial_lu_check(long n, int* ok_out);

/* ---- verification ----------------------------------------------------- */

/* grid_override: one config record "id|size|params" or NULL for the default
 * grid. Returns the rendered report (rows + findings + summary footer). */
detlab_status detlab_verify(const detlab_registry* reg, const char* id,
                            const char* grid_override, int jobs, int with_timings,
                            char** report_out, long* mismatches_out);

/* config: full override text (catalog-style records) or NULL. */
detlab_status detlab_verify_all(const detlab_registry* reg, const char* config,
                                int jobs, int with_timings, char** report_out,
                                long* mismatches_out);

/* ---- guessing --------------------------------------------------------- */

/* seq_text: one exact value per line (integer or num/den). On success the
 * conjectured product formula is rendered into *out; DETLAB_ERR_NO_FIT means
 * the sequence resisted fitting (not an internal failure). */
detlab_status detlab_guess(const char* seq_text, char** out);

/* Largest-prime-factor report; *round_out is 1 when every term factors below
 * the bound. */
detlab_status detlab_roundness(const char* seq_text, long prime_bound,
                               char** report_out, int* round_out);

/* ---- benchmarking ------------------------------------------------------ */

/* Timing table (one line per n) for the engines on one family. */
detlab_status detlab_bench(const detlab_registry* reg, const char* id,
                           const char* params, long n_max, char** table_out);

#ifdef __cplusplus
}
#endif

#endif /* DETLAB_H */
