#ifndef LOGRED_H
#define LOGRED_H

/* C API for the logred library: exact combinatorial tests for logarithmic
 * good reduction (p-locus classification, tame monodromy zeta functions,
 * dual-graph calculus of sncd curve fibers, genus-1 decision procedure).
 *
 * All objects are opaque handles created by lr_*_parse / constructor
 * functions and released with the matching lr_*_free. Strings returned
 * through char** out-parameters are heap-allocated and must be released
 * with lr_string_free. Functions return LR_OK on success; on failure the
 * thread-local message from lr_last_error() describes the problem.
 */

#ifdef __cplusplus
extern "C" {
#endif

typedef enum lr_status {
  LR_OK = 0,
  LR_ERR_PARSE = 1,
  LR_ERR_SCHEMA = 2,
  LR_ERR_SEMANTIC = 3,
  LR_ERR_INVALID_ARG = 4,
  LR_ERR_BUDGET_EXCEEDED = 5,
  LR_ERR_NOT_APPLICABLE = 6,
  LR_ERR_MISSING_DATA = 7,
  LR_ERR_INCONSISTENT = 8,
  LR_ERR_NOT_CONTRACTIBLE = 9,
  LR_ERR_UNSUPPORTED_TYPE = 10,
  LR_ERR_INTERNAL = 11
} lr_status;

typedef struct lr_model lr_model;
typedef struct lr_graph lr_graph;

const char* lr_version(void);

/* Thread-local message describing the most recent failure. */
const char* lr_last_error(void);

void lr_string_free(char* s);

/* "model" or "graph", decided by the presence of 'points' / 'vertices'. */
lr_status lr_detect_kind(const char* json, char** out_kind);

/* ---- models (fan + stratum data) ---- */

lr_status lr_model_parse(const char* json, lr_model** out);
void lr_model_free(lr_model* m);

lr_status lr_model_render(const lr_model* m, char** out_json);

/* Fan/poset checks, chart recomputation, and (for models claimed log
 * smooth) the vanishing and tame-point consistency reports. */
lr_status lr_model_validate(const lr_model* m, char** out_json);

lr_status lr_model_classify(const lr_model* m, char** out_json);
lr_status lr_model_zeta(const lr_model* m, char** out_json);
lr_status lr_model_euler(const lr_model* m, long long* out);
lr_status lr_model_tame_point(const lr_model* m, int* out);
lr_status lr_model_check_vanishing(const lr_model* m, char** out_json);
lr_status lr_model_restrictions(const lr_model* m, char** out_json);
lr_status lr_model_check_smooth(const lr_model* m, char** out_json);

/* ---- weighted dual graphs of sncd curve fibers ---- */

lr_status lr_graph_parse(const char* json, lr_graph** out);
void lr_graph_free(lr_graph* g);

lr_status lr_graph_render(const lr_graph* g, char** out_json);
lr_status lr_graph_to_dot(const lr_graph* g, char** out);

lr_status lr_graph_saito(const lr_graph* g, char** out_json);
lr_status lr_graph_scale(const lr_graph* g, long long m, lr_graph** out);
lr_status lr_graph_contract(const lr_graph* g, const char* vertex_id,
                            lr_graph** out, int* smoothness_preserved);
lr_status lr_graph_contract_all(const lr_graph* g, lr_graph** out,
                                char** out_report_json);
lr_status lr_graph_strata_model(const lr_graph* g, int log_smooth_claimed,
                                lr_model** out);

/* Minimal sncd dual graph of a Kodaira fiber type ("I", "I*", "II", "III",
 * "IV", "II*", "III*", "IV*"; n applies to I and I*). */
lr_status lr_kodaira(const char* symbol, long long n, long long p,
                     lr_graph** out);

/* ---- genus-1 decision procedure ---- */

/* params: {"p":2,"period":2,"h1_tame":true,"jacobian":"good",
 *          "coh_flat":true,"mu":2,"supersingular":false}
 * (coh_flat, mu, supersingular optional) */
lr_status lr_genus1_decide(const char* params_json, char** out_json);

#ifdef __cplusplus
}
#endif

#endif /* LOGRED_H */
