#ifndef GQM_GQM_H
#define GQM_GQM_H

/*
 * C interface to the gqm library: finite groupoids, their quotient
 * symmetroids and channels on pair-groupoid algebras.
 *
 * Objects are opaque handles released with the matching *_free function.
 * Every fallible call returns a gqm_status; on failure gqm_last_error()
 * describes the problem (per thread, valid until the next failing call).
 * Strings returned through char** are heap-allocated JSON (or CSV) and must
 * be released with gqm_string_free.
 *
 * Reports carry a "verdict" field ("pass" or "fail"); calls that run checks
 * also store the verdict in *ok when ok is not NULL.
 */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(GQM_BUILDING)
#    define GQM_API __declspec(dllexport)
#  else
#    define GQM_API __declspec(dllimport)
#  endif
#else
#  define GQM_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum gqm_status {
  GQM_OK = 0,
  GQM_ERR_INVALID_ARGUMENT = 1,
  GQM_ERR_SCHEMA = 2,
  GQM_ERR_NOT_HAAR = 3,
  GQM_ERR_NOT_COMPOSABLE = 4,
  GQM_ERR_NOT_PULLBACK = 5,
  GQM_ERR_TOO_MANY_KRAUS = 6,
  GQM_ERR_DIMENSION_MISMATCH = 7,
  GQM_ERR_NORMALIZATION = 8,
  GQM_ERR_IO = 9,
  GQM_ERR_NULL_ARGUMENT = 10,
  GQM_ERR_INTERNAL = 11
} gqm_status;

typedef struct gqm_groupoid gqm_groupoid;
typedef struct gqm_channel gqm_channel;

GQM_API const char* gqm_version(void);
GQM_API const char* gqm_status_name(gqm_status status);
GQM_API const char* gqm_last_error(void);
GQM_API void gqm_string_free(char* s);

/* Groupoids.  `validate` rejects tables that break the groupoid axioms. */
GQM_API gqm_status gqm_groupoid_pair(uint32_t n, gqm_groupoid** out);
GQM_API gqm_status gqm_groupoid_from_json(const char* text, const char* origin, int validate, gqm_groupoid** out);
GQM_API gqm_status gqm_groupoid_load(const char* path, int validate, gqm_groupoid** out);
GQM_API void gqm_groupoid_free(gqm_groupoid* g);
GQM_API uint32_t gqm_groupoid_n_objects(const gqm_groupoid* g);
GQM_API uint32_t gqm_groupoid_n_morphisms(const gqm_groupoid* g);
GQM_API gqm_status gqm_groupoid_to_json(const gqm_groupoid* g, char** out);
GQM_API gqm_status gqm_groupoid_validate(const gqm_groupoid* g, int* ok, char** report);

/* Measures and the convolution algebra.  Functions are JSON objects
 * {"values": [[re, im], ...]} indexed by morphism id; a NULL measure means
 * the counting measure. */
GQM_API gqm_status gqm_measure_check(const gqm_groupoid* g, const char* measure_json, const char* origin, int exact,
                                     int* ok, char** report);
GQM_API gqm_status gqm_algebra_convolve(const gqm_groupoid* g, const char* f_json, const char* h_json,
                                        const char* measure_json, char** out);
GQM_API gqm_status gqm_algebra_involute(const gqm_groupoid* g, const char* f_json, const char* measure_json, char** out);
/* tol < 0 selects the default PSD tolerance. */
GQM_API gqm_status gqm_algebra_check_positive(const gqm_groupoid* g, const char* phi_json, double tol, int* ok,
                                              char** report);

/* Quotient symmetroid over pair_groupoid(n).  samples == 0: exhaustive. */
GQM_API gqm_status gqm_symmetroid_enumerate(uint32_t n, char** report);
GQM_API gqm_status gqm_symmetroid_check_exchange(uint32_t n, size_t samples, uint64_t seed, int* ok, char** report);
GQM_API gqm_status gqm_symmetroid_flat_bisections(uint32_t n, int exhaustive, int* ok, char** report);

/* Channels.  Kernel JSON: {"n": int, "values": [...]} with n^4 entries;
 * Kraus JSON: {"n": int, "members": [function, ...]}. */
GQM_API gqm_status gqm_channel_from_json(const char* text, const char* origin, gqm_channel** out);
GQM_API gqm_status gqm_channel_load(const char* path, gqm_channel** out);
GQM_API gqm_status gqm_channel_from_kraus_json(const char* text, const char* origin, gqm_channel** out);
GQM_API gqm_status gqm_channel_load_kraus(const char* path, gqm_channel** out);
/* The flat bisection of the permutation sigma of {0..n-1}. */
GQM_API gqm_status gqm_channel_from_permutation(const uint32_t* sigma, uint32_t n, gqm_channel** out);
GQM_API gqm_status gqm_channel_identity(uint32_t n, gqm_channel** out);
GQM_API gqm_status gqm_channel_transpose(uint32_t n, gqm_channel** out);
GQM_API void gqm_channel_free(gqm_channel* ch);
GQM_API uint32_t gqm_channel_dimension(const gqm_channel* ch);
GQM_API gqm_status gqm_channel_to_json(const gqm_channel* ch, char** out);

/* Interleaved (re, im) buffers: input has 2 n^2 doubles, output likewise. */
GQM_API gqm_status gqm_channel_apply_values(const gqm_channel* ch, const double* input, size_t input_len, double* output,
                                            size_t output_len);
/* state: "delta:j,k", "units" or a path to a function JSON file on
 * pair_groupoid(n).  pad_to > 0 zero-extends channel and state first. */
GQM_API gqm_status gqm_channel_apply(const gqm_channel* ch, const char* state, uint32_t pad_to, char** out);

typedef struct gqm_check_options {
  int cp;
  int flat_psd;
  int unital;
  size_t falsify_trials; /* 0: no falsifier run */
  uint64_t seed;
  uint32_t ancilla; /* 0 is read as 1 */
  double tol;       /* < 0: default */
} gqm_check_options;

GQM_API gqm_status gqm_channel_check(const gqm_channel* ch, const gqm_check_options* options, int* ok, char** report);
GQM_API gqm_status gqm_channel_is_cp(const gqm_channel* ch, double tol, int* cp, double* min_eigenvalue);

typedef enum gqm_matrix_kind { GQM_MATRIX_CHOI = 0, GQM_MATRIX_A = 1, GQM_MATRIX_B = 2 } gqm_matrix_kind;
typedef enum gqm_format { GQM_FORMAT_JSON = 0, GQM_FORMAT_CSV = 1 } gqm_format;

GQM_API gqm_status gqm_channel_export(const gqm_channel* ch, gqm_matrix_kind kind, gqm_format format, char** out);

/* Worked examples.  state as in gqm_channel_apply. */
GQM_API gqm_status gqm_example_fourier(uint32_t n, const char* state, int* ok, char** report);
GQM_API gqm_status gqm_example_shift(uint32_t n, const char* state, int* ok, char** report);
GQM_API gqm_status gqm_reproduce(const char* out_dir, int* ok, char** summary);

#ifdef __cplusplus
}
#endif

#endif
