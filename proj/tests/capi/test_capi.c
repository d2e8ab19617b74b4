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

/* Exercises the C interface end to end. */

#include <stdio.h>
#include <stdlib.h>
#include <string.h>

#include "smfp/smfp.h"

static int failures = 0;

#define EXPECT(cond)                                                 \
  do {                                                               \
    if (!(cond)) {                                                   \
      fprintf(stderr, "%s:%d: expected %s\n", __FILE__, __LINE__, #cond); \
      ++failures;                                                    \
    }                                                                \
  } while (0)

#define OK(call) EXPECT((call) == SMFP_OK)

static void test_generators_and_info(void) {
  smfp_series* e4 = NULL;
  smfp_series_info info;
  OK(smfp_gen_eisenstein(4, 6, &e4));
  OK(smfp_series_info_get(e4, &info));
  EXPECT(info.genus == 1 && info.modulus == 0 && info.weight_num == 4 && info.weight_den == 1);
  EXPECT(info.bound == 6 && info.scale == 1 && info.terms == 7);

  char* text = NULL;
  OK(smfp_series_serialize(e4, &text));
  {
    const char* head = "SMFP v1 kind=scalar g=1 domain=Q k=4/1 B=6 d=1\n1;1;0 ; 1/1\n1;1;2 ; 240/1\n";
    EXPECT(strncmp(text, head, strlen(head)) == 0);
  }
  smfp_series* back = NULL;
  int equal = 0;
  OK(smfp_series_parse(text, &back));
  OK(smfp_series_eq_upto(e4, back, 6, &equal));
  EXPECT(equal == 1);
  smfp_string_free(text);
  smfp_series_free(back);

  smfp_series* e6 = NULL;
  smfp_series* sum = NULL;
  OK(smfp_gen_eisenstein(6, 6, &e6));
  EXPECT(smfp_series_add(e4, e6, &sum) == SMFP_ERR_WEIGHT_MISMATCH);
  EXPECT(sum == NULL);
  EXPECT(strstr(smfp_last_error(), "weight") != NULL);
  EXPECT(strcmp(smfp_status_name(SMFP_ERR_WEIGHT_MISMATCH), "WeightMismatch") == 0);

  smfp_series* e10 = NULL;
  smfp_series* prod = NULL;
  OK(smfp_gen_eisenstein(10, 6, &e10));
  OK(smfp_series_mul(e4, e6, &prod));
  OK(smfp_series_eq_upto(prod, e10, 6, &equal));
  EXPECT(equal == 1);
  EXPECT(smfp_series_eq_upto(prod, e10, 7, &equal) == SMFP_ERR_INSUFFICIENT_PRECISION);

  smfp_series_free(e4);
  smfp_series_free(e6);
  smfp_series_free(e10);
  smfp_series_free(prod);
}

static void test_pipeline(void) {
  smfp_series* d = NULL;
  smfp_series* d5 = NULL;
  smfp_series* out = NULL;
  smfp_series* p5 = NULL;
  char* log = NULL;
  int equal = 0;
  smfp_op_params params;
  memset(&params, 0, sizeof params);

  OK(smfp_gen_delta(4, &d));
  OK(smfp_series_reduce(d, 5, &d5));
  OK(smfp_apply_pipeline(d5, "V,U", &params, &out, &log));
  EXPECT(log != NULL && strstr(log, "op=V") != NULL && strstr(log, "op=U") != NULL);
  smfp_string_free(log);
  smfp_series_info info;
  OK(smfp_series_info_get(out, &info));
  EXPECT(info.weight_num == 60 && info.bound == 4);
  smfp_series_free(out);

  OK(smfp_apply_pipeline(d5, "V", &params, &out, NULL));
  OK(smfp_series_pow(d5, 5, &p5));
  OK(smfp_series_eq_upto(out, p5, 4, &equal));
  EXPECT(equal == 1);
  int singular = 0;
  long r = -1, kprime = -1;
  smfp_series* h = NULL;
  OK(smfp_is_p_singular(out, &singular));
  EXPECT(singular == 1);
  OK(smfp_p_root(out, 60, &r, &kprime, &h));
  EXPECT(r == 0 && kprime == 12);
  smfp_series_free(h);
  smfp_series_free(out);
  smfp_series_free(p5);

  EXPECT(smfp_apply_pipeline(d, "U", &params, &out, NULL) == SMFP_ERR_DOMAIN_MISMATCH);
  EXPECT(strstr(smfp_last_error(), "step 1") != NULL);
  EXPECT(smfp_apply_pipeline(d5, "bogus", &params, &out, NULL) == SMFP_ERR_INVALID_ARGUMENT);

  params.l = 2;
  OK(smfp_apply_pipeline(d, "hecke", &params, &out, NULL));
  OK(smfp_series_info_get(out, &info));
  EXPECT(info.bound == 2);
  smfp_series_free(out);

  smfp_series_free(d);
  smfp_series_free(d5);
}

static void test_genus2_and_errors(void) {
  smfp_series* chi = NULL;
  smfp_series* phi = NULL;
  smfp_series* th = NULL;
  smfp_series* bad = NULL;
  smfp_op_params params;
  memset(&params, 0, sizeof params);
  OK(smfp_gen_chi10(3, &chi));
  OK(smfp_apply_pipeline(chi, "phi", &params, &phi, NULL));
  smfp_series_info info;
  OK(smfp_series_info_get(phi, &info));
  EXPECT(info.genus == 1 && info.terms == 0);
  EXPECT(smfp_gen_theta("1010", 2, &th) == SMFP_ERR_ODD_CHARACTERISTIC);
  OK(smfp_gen_theta("0000", 2, &th));
  OK(smfp_series_info_get(th, &info));
  EXPECT(info.scale == 8 && info.weight_den == 2);
  EXPECT(smfp_series_parse("not a series\n", &bad) == SMFP_ERR_PARSE);
  EXPECT(smfp_series_parse(NULL, &bad) == SMFP_ERR_INVALID_ARGUMENT);
  char* table = NULL;
  OK(smfp_series_table(chi, 1, &table));
  EXPECT(strstr(table, "# SMFP v1 kind=scalar g=2") == table);
  smfp_string_free(table);
  smfp_series_free(chi);
  smfp_series_free(phi);
  smfp_series_free(th);
}

static void test_verify(void) {
  char* report = NULL;
  int passed = 0;
  OK(smfp_verify("frobenius", 1, 5, 0, 0, 42, &report, &passed));
  EXPECT(passed == 1);
  EXPECT(strncmp(report, "CHECK ", 6) == 0);
  smfp_string_free(report);
  EXPECT(smfp_verify("nope", 0, 0, 0, 0, 42, &report, &passed) == SMFP_ERR_INVALID_ARGUMENT);
  EXPECT(strstr(smfp_suite_names(), "starstar") != NULL);
  EXPECT(strlen(smfp_version()) > 0);
}

int main(void) {
  test_generators_and_info();
  test_pipeline();
  test_genus2_and_errors();
  test_verify();
  if (failures) {
    fprintf(stderr, "%d failure(s)\n", failures);
    return 1;
  }
  printf("capi: all checks passed\n");
  return 0;
}
