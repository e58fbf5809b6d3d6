/* Copyright 2026 The rittkit Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef RITTKIT_RITTKIT_H
#define RITTKIT_RITTKIT_H

/* C interface of librittkit. Matrices are square, complex and stored
 * column-major as separate real and imaginary arrays. Every call returns an
 * rk_status; on failure rk_last_error_message() describes the cause (per
 * thread, valid until the next failing call). */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define RK_API __declspec(dllexport)
#elif defined(__GNUC__)
#define RK_API __attribute__((visibility("default")))
#else
#define RK_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
  RK_OK = 0,
  RK_INVALID_ARGUMENT = 1,
  RK_DIMENSION_MISMATCH = 2,
  RK_NUMERICAL_FAILURE = 3,
  RK_SPECTRUM = 4,
  RK_NOT_CONVERGED = 5,
  RK_INTERNAL = 99
} rk_status;

typedef struct rk_mat rk_mat;
typedef struct rk_superop rk_superop;

RK_API const char* rk_last_error_message(void);
RK_API const char* rk_version(void);

/* ---- matrices ---- */

/* im may be NULL for a real matrix. */
RK_API rk_status rk_mat_create(int n, const double* re, const double* im, rk_mat** out);
/* Complex Gaussian entries, deterministic in (seed, index). */
RK_API rk_status rk_mat_random(int n, uint64_t seed, uint64_t index, rk_mat** out);
RK_API void rk_mat_destroy(rk_mat* m);
RK_API int rk_mat_dim(const rk_mat* m);
/* re and im must hold n*n doubles; im may be NULL. */
RK_API rk_status rk_mat_get(const rk_mat* m, double* re, double* im);
/* p = INFINITY selects the operator norm. */
RK_API rk_status rk_schatten_norm(const rk_mat* m, double p, double* out);

/* ---- maps on M_n ---- */

RK_API rk_status rk_superop_left(const rk_mat* a, rk_superop** out);
RK_API rk_status rk_superop_right(const rk_mat* a, rk_superop** out);
RK_API rk_status rk_superop_schur(const rk_mat* m, rk_superop** out);
/* Left (right != 0: right) multiplication by diag(1 - 2^-k), k = 1..n. */
RK_API rk_status rk_superop_diag_a(int n, int right, rk_superop** out);
RK_API rk_status rk_superop_apply(const rk_superop* t, const rk_mat* x, rk_mat** out);
RK_API int rk_superop_dim(const rk_superop* t);
/* re and im receive the n^2 eigenvalues of T. */
RK_API rk_status rk_superop_spectrum(const rk_superop* t, double* re, double* im);
RK_API void rk_superop_destroy(rk_superop* t);

/* ---- square functions ---- */

typedef enum { RK_SQ_COL = 0, RK_SQ_ROW = 1, RK_SQ_RAD = 2, RK_SQ_SPLIT = 3 } rk_sq_kind;

typedef struct {
  double p;
  double alpha;
  int kind; /* rk_sq_kind */
  long k_max;
  double tol;
  double rho;
} rk_sq_spec;

typedef struct {
  double value;
  double lower;
  double upper;
  double tail_bound;
  long k_used;
  int converged;
} rk_sq_result;

RK_API rk_sq_spec rk_sq_default_spec(void);
/* "col", "row", "rad" or "split". */
RK_API rk_status rk_sq_kind_parse(const char* name, int* kind);
RK_API rk_status rk_square_function(const rk_superop* t, const rk_mat* x, const rk_sq_spec* spec,
                                    rk_sq_result* out);

/* ---- column/row growth on the diagonal example ---- */

typedef struct {
  int n;
  double col_norm;
  double row_norm;
  double ratio;
} rk_growth_row;

typedef struct {
  double slope;
  double intercept;
  double residual;
  double theta;
  double expected_slope;
} rk_growth_summary;

/* rows must hold count entries. threads <= 1 runs serially. */
RK_API rk_status rk_growth(double p, const int* n_list, size_t count, int threads, rk_growth_row* rows,
                           rk_growth_summary* summary);

/* ---- decomposition ---- */

typedef enum {
  RK_SPLIT_ALL_COLUMN = 0,
  RK_SPLIT_ALL_ROW = 1,
  RK_SPLIT_RAD_OPTIMAL = 2,
  RK_SPLIT_THRESHOLDED = 3
} rk_splitter;

typedef struct {
  int splitter; /* rk_splitter */
  long k;       /* 0 chooses from tol */
  double tol;
  double alpha;
} rk_decomp_options;

typedef struct {
  rk_mat* x1;
  rk_mat* x2;
  double col_sq;
  double row_sq;
  double constant;
  double residual;
  long k_used;
} rk_decomp_result;

RK_API rk_decomp_options rk_decomp_default_options(void);
/* "all-column", "all-row", "rad-optimal" or "thresholded". */
RK_API rk_status rk_splitter_parse(const char* name, int* splitter);
/* opts may be NULL. Release the result with rk_decomp_result_free. */
RK_API rk_status rk_decompose(const rk_superop* t, const rk_mat* x, double p, const rk_decomp_options* opts,
                              rk_decomp_result* out);
RK_API void rk_decomp_result_free(rk_decomp_result* r);

/* ---- Markov maps ---- */

typedef struct {
  int unital;
  int trace_preserving;
  int completely_positive;
  int selfadjoint;
  int minus_one_free;
  int valid;
} rk_markov_certificate;

/* Schur multiplier by the Toeplitz matrix c^|i-j|, 0 <= c <= 1. */
RK_API rk_status rk_markov_toeplitz(int n, double c, rk_superop** out);
RK_API rk_status rk_markov_validate(const rk_superop* t, rk_markov_certificate* out);
/* Decomposes (I - P) x for T - P, P the projection onto the fixed points.
 * fixed_dim may be NULL. */
RK_API rk_status rk_markov_demo(const rk_superop* t, double p, const rk_mat* x, const rk_decomp_options* opts,
                                rk_decomp_result* out, int* fixed_dim);

/* ---- Ritt constants ---- */

typedef struct {
  double power_bound;
  double power_lower;
  double diff_bound;
  double diff_lower;
  int diff_argmax;
  double resolvent_bound;
  double resolvent_lower;
  double spectral_radius;
  int exact;
} rk_ritt_report;

RK_API rk_status rk_ritt_constants(const rk_superop* t, int n_max, double p, rk_ritt_report* out);
RK_API rk_status rk_hankel_regular(int k, double* out);

/* ---- invariant suites ---- */

/* Writes a JSON report to *json (free with rk_string_free) and sets *passed.
 * Returns RK_INVALID_ARGUMENT for an unknown suite. */
RK_API rk_status rk_check_suite(const char* name, uint64_t seed, char** json, int* passed);
RK_API void rk_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif /* RITTKIT_RITTKIT_H */
