#ifndef PASSLOC_H
#define PASSLOC_H

#include <stddef.h>
#include <stdint.h>

#if defined(PASSLOC_BUILDING)
#define PASSLOC_API __attribute__((visibility("default")))
#else
#define PASSLOC_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes. Nonzero values mirror the library's error kinds. */
enum {
  PASSLOC_OK = 0,
  PASSLOC_E_ZERO_ARGUMENT,
  PASSLOC_E_ZERO_POLYNOMIAL,
  PASSLOC_E_MULTIPLE_ROOT_UNRESOLVED,
  PASSLOC_E_ENCLOSURE_OVERLAP,
  PASSLOC_E_NOT_INTERLACING,
  PASSLOC_E_NOT_POSITIVE_AT_ONE,
  PASSLOC_E_ALL_ZERO_MULTIPLIER,
  PASSLOC_E_INVALID_ARGUMENT,
  PASSLOC_E_MULTIPLE_POLE,
  PASSLOC_E_POLE_ON_UNIT_CIRCLE,
  PASSLOC_E_MASS_CONDITION,
  PASSLOC_E_BAD_HONEYCOMB_SPEC,
  PASSLOC_E_INVALID_SPEC,
  PASSLOC_E_CONFIG,
  PASSLOC_E_P_MEMBERSHIP,
  PASSLOC_E_Q_CERTIFICATION,
  PASSLOC_E_DEGENERATE_QUERY,
  PASSLOC_E_REFLECTING_LEVEL_IN_STRIP,
  PASSLOC_E_NO_CONVERGENCE,
  PASSLOC_E_HORIZON_EXCEEDED,
  PASSLOC_E_NEGATIVE_INPUT,
  PASSLOC_E_NUMERIC,
  PASSLOC_E_IO,
  PASSLOC_E_INTERNAL = 100
};

typedef struct passloc_spec passloc_spec;
typedef struct passloc_pmf passloc_pmf;

typedef struct passloc_limit_options {
  int method; /* 0 closure, 1 b doubling */
  double tol;
  int min_log2;
  int max_log2;
  double tv_tol;
  long b_max;
} passloc_limit_options;

/* Message of the last failure on this thread. */
PASSLOC_API const char* passloc_last_error(void);
PASSLOC_API const char* passloc_status_name(int status);
PASSLOC_API void passloc_string_free(char* s);
PASSLOC_API void passloc_set_precision_bits(unsigned bits);
PASSLOC_API unsigned passloc_precision_bits(void);

PASSLOC_API int passloc_spec_from_json(const char* text, passloc_spec** out);
PASSLOC_API int passloc_spec_load(const char* path, passloc_spec** out);
/* name: symmetric-diagonal, symmetric-standard, uniform-honeycomb, bondesson (param q) */
PASSLOC_API int passloc_spec_builtin(const char* name, const char* param, passloc_spec** out);
PASSLOC_API int passloc_spec_to_json(const passloc_spec* s, char** out);
/* valid is set to 1 or 0; report lists the violations. */
PASSLOC_API int passloc_spec_validate(const passloc_spec* s, int* valid, char** report);
PASSLOC_API void passloc_spec_free(passloc_spec* s);

PASSLOC_API void passloc_limit_options_default(passloc_limit_options* o);

PASSLOC_API int passloc_pmf_finite(const passloc_spec* s, int y, int b, passloc_pmf** out);
PASSLOC_API int passloc_pmf_limit(const passloc_spec* s, int y, const passloc_limit_options* o, passloc_pmf** out);
PASSLOC_API int passloc_pmf_barrier(const passloc_spec* s, int y, const passloc_limit_options* o, passloc_pmf** out);
/* b = 0: no upper barrier */
PASSLOC_API int passloc_pmf_dp(const passloc_spec* s, int y, long b, double tail_cap, long max_steps, passloc_pmf** out);
PASSLOC_API int passloc_pmf_simulate(const passloc_spec* s, int y, long b, long samples, long step_cap, uint64_t seed,
                                     int threads, passloc_pmf** out, char** stats);
PASSLOC_API int passloc_pmf_from_csv(const char* text, long samples, passloc_pmf** out);

PASSLOC_API long passloc_pmf_offset(const passloc_pmf* p);
PASSLOC_API size_t passloc_pmf_size(const passloc_pmf* p);
PASSLOC_API const double* passloc_pmf_values(const passloc_pmf* p);
PASSLOC_API double passloc_pmf_tail_bound(const passloc_pmf* p);
/* Rows for k in [k_min, k_max] when k_min <= k_max, else the stored range. */
PASSLOC_API int passloc_pmf_csv(const passloc_pmf* p, long k_min, long k_max, char** out);
PASSLOC_API int passloc_pmf_meta(const passloc_pmf* p, char** out);
/* passed is 1 when sign changes of the n-th differences equal n for n <= n_max */
PASSLOC_API int passloc_pmf_bell(const passloc_pmf* p, int n_max, double trunc_rel, int* passed, char** report);
PASSLOC_API void passloc_pmf_free(passloc_pmf* p);

PASSLOC_API int passloc_compare(const passloc_pmf* p, const passloc_pmf* q, double* tv, char** report);

/* b = 0: limit. passed reflects certification, bounds and bell shape. */
PASSLOC_API int passloc_verify(const passloc_spec* s, int y, int b, int n_max, int* passed, char** report);
PASSLOC_API int passloc_decompose(const passloc_spec* s, int y, int b, int* passed, char** report);
/* name: diag-symmetric, bondesson, standard-symmetric, honeycomb-uniform; q is used by bondesson */
PASSLOC_API int passloc_example(const char* name, const char* q, int y, int* passed, char** report);

#ifdef __cplusplus
}
#endif

#endif
