/* C interface to the takiff library.
 *
 * Objects are opaque handles owned by the caller and released with the
 * matching *_free function. Every function returns a takiff_status; on
 * failure takiff_last_error() describes the problem (thread-local, valid
 * until the next call on the same thread). Strings returned through char**
 * are heap-allocated UTF-8 and must be released with takiff_string_free.
 * All documents use the JSON formats described in the README. */
#ifndef TAKIFF_TAKIFF_H
#define TAKIFF_TAKIFF_H

#include <stddef.h>
#include <stdint.h>

#if defined(TAKIFF_BUILDING_LIBRARY)
#define TAKIFF_API __attribute__((visibility("default")))
#else
#define TAKIFF_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum takiff_status {
  TAKIFF_OK = 0,
  TAKIFF_ERR_PARSE = 1,      /* malformed JSON or scalar */
  TAKIFF_ERR_STRUCTURE = 2,  /* dimension or ring mismatch */
  TAKIFF_ERR_VALIDATION = 3, /* mathematical precondition (Jacobi, invariance, ...) */
  TAKIFF_ERR_REFUSED = 4,    /* field fails the annihilation precondition */
  TAKIFF_ERR_INTERNAL = 5,   /* internal consistency check fired */
  TAKIFF_ERR_ARGUMENT = 6    /* null pointer or bad argument */
} takiff_status;

typedef struct takiff_algebra takiff_algebra;
typedef struct takiff_rep takiff_rep;
typedef struct takiff_poly takiff_poly;
typedef struct takiff_field takiff_field;

TAKIFF_API const char* takiff_last_error(void);
TAKIFF_API const char* takiff_status_name(takiff_status status);
TAKIFF_API void takiff_string_free(char* s);

/* Lie algebras. */
TAKIFF_API takiff_status takiff_algebra_from_json(const char* json, takiff_algebra** out);
TAKIFF_API takiff_status takiff_algebra_to_json(const takiff_algebra* g, char** out);
TAKIFF_API size_t takiff_algebra_dim(const takiff_algebra* g);
TAKIFF_API void takiff_algebra_free(takiff_algebra* g);
/* Truncated current algebra g_m = g (x) K[T]/(T^{m+1}). */
TAKIFF_API takiff_status takiff_build_takiff(const takiff_algebra* g, unsigned m, takiff_algebra** out);
/* Report {"pass", "checked", "failing_element"} for the coadjoint flip identity. */
TAKIFF_API takiff_status takiff_verify_flip(const takiff_algebra* g, unsigned m, char** report);

/* Representations. kind is one of "so", "so_pq", "sl2", "sl2_adjoint",
 * "sl2_coadjoint", "gl", "zero"; n, p, q are used as the kind requires. */
TAKIFF_API takiff_status takiff_rep_standard(const char* kind, size_t n, size_t p, size_t q, takiff_rep** out);
TAKIFF_API takiff_status takiff_rep_from_json(const char* json, takiff_rep** out);
TAKIFF_API takiff_status takiff_rep_to_json(const takiff_rep* rep, char** out);
TAKIFF_API takiff_status takiff_rep_algebra(const takiff_rep* rep, takiff_algebra** out);
TAKIFF_API void takiff_rep_free(takiff_rep* rep);
/* rho_m on V^{m+1}, as a representation of g_m. */
TAKIFF_API takiff_status takiff_lift_rep(const takiff_rep* rep, unsigned m, takiff_rep** out);

/* Polynomials. */
TAKIFF_API takiff_status takiff_poly_from_json(const char* json, takiff_poly** out);
TAKIFF_API takiff_status takiff_poly_to_json(const takiff_poly* p, char** out);
TAKIFF_API takiff_status takiff_poly_to_string(const takiff_poly* p, char** out);
TAKIFF_API void takiff_poly_free(takiff_poly* p);

/* {"level", "lifts": [Phi_0, ..., Phi_m]}. */
TAKIFF_API takiff_status takiff_lift_invariant(const takiff_rep* rep, unsigned m, const takiff_poly* phi,
                                               int allow_noninvariant, char** out);
/* {"invariant", "failures": [{"element", "name", "value"}]}; *invariant gets 0 or 1. */
TAKIFF_API takiff_status takiff_check_invariant(const takiff_rep* rep, const takiff_poly* phi, int* invariant,
                                                char** report);

/* Vector fields. */
TAKIFF_API takiff_status takiff_field_from_json(const char* json, takiff_field** out);
TAKIFF_API takiff_status takiff_field_to_json(const takiff_field* f, char** out);
TAKIFF_API void takiff_field_free(takiff_field* f);

/* Per-point membership of a(w, v) in rho(g) v; points_json is
 * [{"state": [...], "params": [...]}, ...]. */
TAKIFF_API takiff_status takiff_tangency(const takiff_rep* rep, const takiff_field* field, const char* points_json,
                                         char** report);

/* Decomposes a field on W x V_m under rho_m. gram_json may be NULL (the base
 * solver is chosen automatically). On success *decomposition holds a
 * self-contained document and *report the verification summary. On
 * TAKIFF_ERR_REFUSED, *report carries the witness polynomial and
 * *decomposition is NULL. */
TAKIFF_API takiff_status takiff_decompose(const takiff_rep* rep, unsigned m, const takiff_field* field,
                                          const char* gram_json, char** decomposition, char** report);
/* Checks a = rho_m(b) F exactly; *ok gets 0 or 1. */
TAKIFF_API takiff_status takiff_verify(const takiff_field* field, const char* decomposition_json, int* ok,
                                       char** report);

/* Instance generation from a RunConfig document
 * {"seed", "kind", "n", "p", "q", "level", "max_degree", "params", "max_terms", "zero"}. */
TAKIFF_API takiff_status takiff_generate(const char* config_json, char** out);

/* Runs a named property suite ("all" for every suite). *all_pass gets 0 or 1.
 * human selects the text summary instead of JSON. */
TAKIFF_API takiff_status takiff_run_suite(const char* name, uint64_t seed, int human, char** out, int* all_pass);
/* Space-separated suite names. */
TAKIFF_API takiff_status takiff_suite_names(char** out);

/* Plain-text rendering of any document produced above, with polynomials
 * printed in algebraic notation. */
TAKIFF_API takiff_status takiff_render_human(const char* json, char** out);

#ifdef __cplusplus
}
#endif

#endif /* TAKIFF_TAKIFF_H */
