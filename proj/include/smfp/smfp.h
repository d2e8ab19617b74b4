// Copyright 2026 The smfp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


/* C interface to the smfp library. Series are opaque handles owned by the
 * caller (release with smfp_series_free); strings returned through char**
 * are released with smfp_string_free. Every call returns a status; on
 * failure smfp_last_error() holds a message for the calling thread. */

#ifndef SMFP_SMFP_H_
#define SMFP_SMFP_H_

#include <stddef.h>
#include <stdint.h>

#if defined(SMFP_BUILDING_LIBRARY)
#define SMFP_API __attribute__((visibility("default")))
#else
#define SMFP_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef struct smfp_series smfp_series;

typedef enum smfp_status {
  SMFP_OK = 0,
  SMFP_ERR_INVALID_ARGUMENT = 1,
  SMFP_ERR_WEIGHT_MISMATCH = 2,
  SMFP_ERR_NON_INTEGRAL_AT_P = 3,
  SMFP_ERR_INSUFFICIENT_PRECISION = 4,
  SMFP_ERR_PARSE = 5,
  SMFP_ERR_DOMAIN_MISMATCH = 6,
  SMFP_ERR_ODD_CHARACTERISTIC = 7,
  SMFP_ERR_WEIGHT_INFEASIBLE = 8,
  SMFP_ERR_SCALE_MODULUS_CLASH = 9,
  SMFP_ERR_NOT_THETA_DECOMPOSABLE = 10,
  SMFP_ERR_NO_SOLUTION = 11,
  SMFP_ERR_BERNOULLI_ODD_INDEX = 12,
  SMFP_ERR_OVERFLOW = 13,
  SMFP_ERR_INTERNAL = 99
} smfp_status;

typedef struct smfp_series_info {
  int is_matrix;
  int genus;
  uint32_t modulus; /* 0 over Q */
  long weight_num;
  long weight_den;
  int64_t bound;
  int64_t scale;
  size_t terms;
} smfp_series_info;

/* Parameters consumed by the operators; unused fields are ignored. */
typedef struct smfp_op_params {
  uint32_t p;  /* reduce; checked against the domain of U, V when nonzero */
  int64_t l;   /* hecke */
  long k;      /* hecke weight; 0 takes the series weight */
  int64_t nu;  /* fj */
  int64_t cap; /* V bound cap; 0 for none */
} smfp_op_params;

SMFP_API const char* smfp_last_error(void);
/* Stable error name, e.g. "WeightMismatch". */
SMFP_API const char* smfp_status_name(smfp_status status);
SMFP_API void smfp_string_free(char* s);
SMFP_API void smfp_series_free(smfp_series* s);
SMFP_API const char* smfp_version(void);

/* Generators. */
SMFP_API smfp_status smfp_gen_eisenstein(long k, int64_t bound, smfp_series** out);
SMFP_API smfp_status smfp_gen_delta(int64_t bound, smfp_series** out);
SMFP_API smfp_status smfp_gen_hasse(int genus, uint32_t p, int64_t bound, smfp_series** out);
/* characteristic: 2g binary digits, 2m' then 2m''. */
SMFP_API smfp_status smfp_gen_theta(const char* characteristic, int64_t bound, smfp_series** out);
SMFP_API smfp_status smfp_gen_chi10(int64_t bound, smfp_series** out);
SMFP_API smfp_status smfp_gen_psi4(int64_t bound, smfp_series** out);
SMFP_API smfp_status smfp_gen_theta_fa(int64_t nu, int64_t a_numerator, int derivative, int64_t bound,
                                       smfp_series** out);

/* Text I/O and inspection. */
SMFP_API smfp_status smfp_series_parse(const char* text, smfp_series** out);
SMFP_API smfp_status smfp_series_serialize(const smfp_series* s, char** out);
SMFP_API smfp_status smfp_series_table(const smfp_series* s, int64_t max_trace, char** out);
SMFP_API smfp_status smfp_series_info_get(const smfp_series* s, smfp_series_info* out);

/* Ring operations on scalar series. */
SMFP_API smfp_status smfp_series_add(const smfp_series* a, const smfp_series* b, smfp_series** out);
SMFP_API smfp_status smfp_series_mul(const smfp_series* a, const smfp_series* b, smfp_series** out);
SMFP_API smfp_status smfp_series_pow(const smfp_series* a, unsigned n, smfp_series** out);
SMFP_API smfp_status smfp_series_reduce(const smfp_series* a, uint32_t p, smfp_series** out);
/* Same series at scale d (a multiple of its current scale). */
SMFP_API smfp_status smfp_series_rescale(const smfp_series* a, int64_t d, smfp_series** out);
SMFP_API smfp_status smfp_series_eq_upto(const smfp_series* a, const smfp_series* b, int64_t bound, int* equal);

/* Operator pipeline: comma-separated names applied left to right from
 * {U, V, phi, hecke, cartier, thetadet, thetamatrix, reduce, fj}. log (may
 * be NULL) receives one line per step. */
SMFP_API smfp_status smfp_apply_pipeline(const smfp_series* in, const char* pipeline, const smfp_op_params* params,
                                         smfp_series** out, char** log);

/* Totally p-singular series and their p-th roots. */
SMFP_API smfp_status smfp_is_p_singular(const smfp_series* f, int* result);
SMFP_API smfp_status smfp_p_root(const smfp_series* f, long k, long* r, long* kprime, smfp_series** h);

/* Verification suites; report holds one CHECK line per check. has_p and
 * has_bound select the suite defaults when zero. */
SMFP_API smfp_status smfp_verify(const char* suite, int has_p, uint32_t p, int has_bound, int64_t bound, uint64_t seed,
                                 char** report, int* passed);
/* Newline-separated suite names. */
SMFP_API const char* smfp_suite_names(void);

#ifdef __cplusplus
}
#endif

#endif /* SMFP_SMFP_H_ */
