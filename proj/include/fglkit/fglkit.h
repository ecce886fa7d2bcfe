#ifndef FGLKIT_FGLKIT_H
#define FGLKIT_FGLKIT_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(__GNUC__)
#define FGLKIT_API __attribute__((visibility("default")))
#else
#define FGLKIT_API
#endif

typedef enum fglkit_status {
    FGLKIT_OK = 0,
    FGLKIT_ERR_INVALID_ARGUMENT = 1, /* NULL pointer, unknown law or basis, negative index */
    FGLKIT_ERR_PARSE = 2,            /* text did not parse; see the last-error offset */
    FGLKIT_ERR_EXPRESSION = 3,       /* parsed expression cannot be evaluated */
    FGLKIT_ERR_BOUND = 4,            /* request exceeds a truncation */
    FGLKIT_ERR_DOMAIN = 5,           /* mathematically undefined request */
    FGLKIT_ERR_STRUCTURAL = 6,       /* mismatched tables, unknown generators or axes */
    FGLKIT_ERR_IO = 7,
    FGLKIT_ERR_INTERNAL = 8
} fglkit_status;

/* Holds the formal group laws and derived tables, memoised per truncation
 * degree and optionally backed by the on-disk cache. A context may be used
 * from several threads. */
typedef struct fglkit_context fglkit_context;

/* A list of identity-check outcomes. */
typedef struct fglkit_reports fglkit_reports;

FGLKIT_API const char* fglkit_version(void);
FGLKIT_API const char* fglkit_status_name(fglkit_status status);

/* Details of the last failed call on the calling thread. The offset is the
 * 1-based byte position for parse and expression errors, 0 otherwise; the
 * expected-token list is comma separated. Strings stay valid until the next
 * call on the same thread. */
FGLKIT_API const char* fglkit_last_error(void);
FGLKIT_API size_t fglkit_last_error_offset(void);
FGLKIT_API const char* fglkit_last_error_expected(void);

/* Every char* handed out by this library is released with this. */
FGLKIT_API void fglkit_string_free(char* s);

/* use_cache = 0 disables the disk cache. cache_dir may be NULL, in which
 * case FGLKIT_CACHE_DIR, $XDG_DATA_HOME/fglkit or ~/.local/share/fglkit is
 * used. */
FGLKIT_API fglkit_status fglkit_context_create(const char* cache_dir, int use_cache, fglkit_context** out);
FGLKIT_API void fglkit_context_destroy(fglkit_context* ctx);

/* Cache warnings collected so far, one per line, then cleared. *out is
 * NULL when there are none. */
FGLKIT_API fglkit_status fglkit_context_take_warnings(fglkit_context* ctx, char** out);

/* Results below are JSON text; polynomials appear as canonical strings
 * that fglkit_canonicalize accepts. law is "universal", "additive" or
 * "multiplicative"; basis is "beta" or "p". */

/* [{i, j, value}] for the nonzero a_ij with i + j <= degree. */
FGLKIT_API fglkit_status fglkit_fgl_coefficients(fglkit_context* ctx, const char* law, int degree, char** out_json);
/* [{n, value}] for n = 0..max_n. */
FGLKIT_API fglkit_status fglkit_cp_classes(fglkit_context* ctx, int max_n, char** out_json);
/* [{n, eta, eta_prime}] for n = 0..max_n. */
FGLKIT_API fglkit_status fglkit_eta(fglkit_context* ctx, int max_n, char** out_json);
/* [{left, right, coefficient}] of the coproduct of the n-th basis element. */
FGLKIT_API fglkit_status fglkit_hopf_coproduct(fglkit_context* ctx, const char* basis, int n, char** out_json);
/* [{index, coefficient}] of the product of the n-th and m-th basis elements. */
FGLKIT_API fglkit_status fglkit_hopf_product(fglkit_context* ctx, const char* basis, int n, int m, char** out_json);
/* [{r, coefficient}] with p_n p_m = sum_r coefficient p_r, nonzero terms. */
FGLKIT_API fglkit_status fglkit_segre(fglkit_context* ctx, int n, int m, char** out_json);
/* {law, n, diagonal, euler, agree} for the diagonal of P^n. */
FGLKIT_API fglkit_status fglkit_gysin_diagonal(fglkit_context* ctx, const char* law, int n, char** out_json);
/* Section identity, diagonal against Euler class and projection properties
 * on P^n x P^n. */
FGLKIT_API fglkit_status fglkit_gysin_verify(fglkit_context* ctx, const char* law, int n, fglkit_reports** out);

/* Evaluates a Steenrod expression over k = gens generators mod l. bounds is
 * NULL or a comma separated list of gens exponent bounds. Result:
 * {expression, value, bidegree} with bidegree null for zero or
 * inhomogeneous values. */
FGLKIT_API fglkit_status fglkit_steenrod_eval(unsigned l, int gens, const char* bounds, const char* expression,
                                              char** out_json);

/* Every identity check at the given index bound. */
FGLKIT_API fglkit_status fglkit_verify_all(fglkit_context* ctx, int degree, fglkit_reports** out);

FGLKIT_API size_t fglkit_reports_count(const fglkit_reports* r);
FGLKIT_API int fglkit_reports_all_passed(const fglkit_reports* r);
FGLKIT_API const char* fglkit_reports_name(const fglkit_reports* r, size_t i);
FGLKIT_API int fglkit_reports_passed(const fglkit_reports* r, size_t i);
FGLKIT_API double fglkit_reports_seconds(const fglkit_reports* r, size_t i);
/* [{name, passed, warning, checked, detail, failures}], plus seconds when
 * with_timings is nonzero. */
FGLKIT_API fglkit_status fglkit_reports_json(const fglkit_reports* r, int with_timings, char** out_json);
FGLKIT_API void fglkit_reports_destroy(fglkit_reports* r);

/* Parses a polynomial over the universal coefficient ring truncated at
 * degree and returns its canonical form. */
FGLKIT_API fglkit_status fglkit_canonicalize(fglkit_context* ctx, int degree, const char* polynomial, char** out);

#ifdef __cplusplus
}
#endif

#endif
