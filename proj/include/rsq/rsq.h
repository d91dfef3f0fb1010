/*
 * C interface to the rsq core: exact computations in the bounded derived
 * category of a radical-square-zero algebra presented by a finite quiver.
 *
 * Conventions:
 *  - all functions returning rsq_status set a thread-local error message
 *    retrievable with rsq_last_error() on failure;
 *  - every char** output receives a NUL-terminated heap string owned by the
 *    caller; release it with rsq_string_free();
 *  - quivers are opaque handles parsed from JSON
 *    {"vertices": ["a"], "arrows": [{"id":"l","src":"a","tgt":"a"}]};
 *  - `field` arguments take "q" or "fp:P" (NULL means "fp:32003").
 */

#ifndef RSQ_C_API_H
#define RSQ_C_API_H

#ifdef __cplusplus
extern "C" {
#endif

typedef enum rsq_status {
    RSQ_OK = 0,
    RSQ_ERR_DOMAIN = 1, /* precondition violated (disconnected quiver, ...) */
    RSQ_ERR_PARSE = 2   /* malformed input */
} rsq_status;

typedef struct rsq_quiver rsq_quiver;

const char* rsq_version(void);

/* Last error message of the current thread (empty string when none). */
const char* rsq_last_error(void);

void rsq_string_free(char* s);

rsq_status rsq_quiver_parse(const char* json, rsq_quiver** out);
void rsq_quiver_free(rsq_quiver* q);

/* one-line report: gradability, grading period, underlying shape */
rsq_status rsq_analyze(const rsq_quiver* q, char** out_text);

rsq_status rsq_quiver_dot(const rsq_quiver* q, char** out_dot);

/* covering window [lo, hi] through (anchor, 0); anchor NULL picks the
 * smallest vertex id */
rsq_status rsq_cover_dot(const rsq_quiver* q, int lo, int hi, const char* anchor,
                         char** out_dot);

/* Koszul image of a representation of the opposite covering window
 * ({"dims": {"a@0":1}, "maps": {"alpha@0": [[1]]}}); the window is sized
 * from the support. With pushdown != 0 the result lives over the base
 * algebra, otherwise over the window algebra. Output: complex JSON. */
rsq_status rsq_koszul(const rsq_quiver* q, const char* rep_json, const char* field,
                      int pushdown, char** out_json);

/* Koszul image of the injective at (vertex, level), resolved `depth`
 * degrees below its top. */
rsq_status rsq_koszul_injective(const rsq_quiver* q, const char* vertex, int level,
                                const char* field, int pushdown, int depth, char** out_json);

/* Direct sum decomposition along support components. `q` may be NULL, in
 * which case the quiver is reconstructed from the complex file. Output: a
 * JSON array of complex objects. */
rsq_status rsq_decompose(const rsq_quiver* q, const char* complex_json, char** out_json);

/* homology dimension table {"degree": {"vertex": dim}}; degree bounds from
 * the complex, unreliable truncated degrees omitted */
rsq_status rsq_homology(const rsq_quiver* q, const char* complex_json, char** out_json);

/* {"dim": d} for Hom_K(X, Y[shift]) */
rsq_status rsq_hom(const rsq_quiver* q, const char* x_json, const char* y_json, int shift,
                   char** out_json);

/* Knit the AR quiver of representations of the opposite covering window
 * from its injectives. out_report gets a mesh/shape summary. */
rsq_status rsq_ar_knit(const rsq_quiver* q, int lo, int hi, int steps, const char* field,
                       char** out_dot, char** out_report);

/* locate S[vertex][shift] over the covering and print the irreducible
 * morphism data S[a] -> (+) S[a_i][1] */
rsq_status rsq_simples(const rsq_quiver* q, const char* vertex, int shift, const char* field,
                       int depth, char** out_text);

/* Auslander-Reiten component classification table; with evidence != 0 a
 * knitted window report is appended (steps bounds the knitting) */
rsq_status rsq_classify(const rsq_quiver* q, int evidence, int steps, const char* field,
                        char** out_text);

/* randomized decompose/radicalize consistency vectors */
rsq_status rsq_selfcheck(const char* field, unsigned long long seed, char** out_text);

#ifdef __cplusplus
}
#endif

#endif /* RSQ_C_API_H */
