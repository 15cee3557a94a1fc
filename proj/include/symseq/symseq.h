// Copyright 2026 The symseq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SYMSEQ_SYMSEQ_H
#define SYMSEQ_SYMSEQ_H

/*
 * C interface to libsymseq.
 *
 * Every function returns a symseq_status. On failure the message is available
 * from symseq_last_error() on the calling thread until the next call.
 * Strings returned through char** are owned by the caller and released with
 * symseq_string_free. Paths equal to "-" mean stdout.
 */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define SYMSEQ_API __declspec(dllexport)
#else
#define SYMSEQ_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum symseq_status {
    SYMSEQ_OK = 0,
    SYMSEQ_ERR_CONTRACT = 1,
    SYMSEQ_ERR_SINGULAR = 2,
    SYMSEQ_ERR_DEGENERATE = 3,
    SYMSEQ_ERR_DOMAIN = 4,
    SYMSEQ_ERR_RANK_DEFICIENT = 5,
    SYMSEQ_ERR_NO_CANONICAL_FORM = 6,
    SYMSEQ_ERR_NOT_GLOBALLY_OPTIMAL = 7,
    SYMSEQ_ERR_CERTIFICATE = 8,
    SYMSEQ_ERR_INVALID_POVM = 9,
    SYMSEQ_ERR_ZERO_OPERATOR = 10,
    SYMSEQ_ERR_PARSE = 11,
    SYMSEQ_ERR_IO = 12,
    SYMSEQ_ERR_INVALID_ARGUMENT = 13,
    SYMSEQ_ERR_INTERNAL = 14
} symseq_status;

typedef struct symseq_complex {
    double re;
    double im;
} symseq_complex;

typedef struct symseq_report symseq_report;
typedef struct symseq_measurement symseq_measurement;
typedef struct symseq_povm symseq_povm;

SYMSEQ_API const char *symseq_version(void);
SYMSEQ_API const char *symseq_status_name(symseq_status status);
SYMSEQ_API const char *symseq_last_error(void);
SYMSEQ_API void symseq_string_free(char *s);

/* Overlap models. */
SYMSEQ_API symseq_status symseq_psk_overlap(double s, symseq_complex *out);
SYMSEQ_API symseq_status symseq_lifted_trine_overlap(double g, symseq_complex *out);
SYMSEQ_API symseq_status symseq_ppm_overlap(symseq_complex alpha, symseq_complex beta, symseq_complex *out);

/* Decision procedure. */
SYMSEQ_API symseq_status symseq_check(symseq_complex ka, symseq_complex kb, symseq_report **out);
SYMSEQ_API void symseq_report_free(symseq_report *r);
SYMSEQ_API int symseq_report_verdict(const symseq_report *r);
SYMSEQ_API const char *symseq_report_branch(const symseq_report *r);
SYMSEQ_API double symseq_report_p_global(const symseq_report *r);
SYMSEQ_API double symseq_report_eta(const symseq_report *r);
SYMSEQ_API double symseq_report_c1(const symseq_report *r);
SYMSEQ_API double symseq_report_c2(const symseq_report *r);
SYMSEQ_API symseq_status symseq_report_json(const symseq_report *r, char **out);

/* Construction. Fails with SYMSEQ_ERR_NOT_GLOBALLY_OPTIMAL when the verdict is false. */
SYMSEQ_API symseq_status symseq_construct(symseq_complex ka, symseq_complex kb, symseq_measurement **out);
SYMSEQ_API void symseq_measurement_free(symseq_measurement *m);
SYMSEQ_API const char *symseq_measurement_branch(const symseq_measurement *m);
SYMSEQ_API double symseq_measurement_success(const symseq_measurement *m);
SYMSEQ_API symseq_status symseq_measurement_write_json(const symseq_measurement *m, const char *path);

/* Loading and verification of POVM files. */
SYMSEQ_API symseq_status symseq_povm_load(const char *path, symseq_povm **out);
SYMSEQ_API void symseq_povm_free(symseq_povm *p);
/* Returns SYMSEQ_ERR_PARSE when the file carries no overlaps. */
SYMSEQ_API symseq_status symseq_povm_meta_overlaps(const symseq_povm *p, symseq_complex *ka, symseq_complex *kb);

typedef struct symseq_verify_result {
    int passed;
    double completeness;
    double min_eigenvalue;
    double unambiguity_residual;
    double success;
    double global_optimum;
    double alice_completeness;
    double consistency;
} symseq_verify_result;

/* ka and kb may be NULL to use the overlaps stored in the file. json may be NULL. */
SYMSEQ_API symseq_status symseq_verify(const symseq_povm *p, const symseq_complex *ka, const symseq_complex *kb,
                                       symseq_verify_result *result, char **json);

/* Samples outcomes for input state |a_r>|b_r> (canonical labelling of the file).
 * counts and probabilities (may be NULL) must hold outcome_count entries. */
SYMSEQ_API size_t symseq_povm_outcome_count(const symseq_povm *p);
SYMSEQ_API symseq_status symseq_simulate(const symseq_povm *p, int state_index, uint64_t shots, uint64_t seed,
                                         uint64_t *counts, double *probabilities);

/* Multipartite sufficient condition. failing_level is -1 when none fails. */
SYMSEQ_API symseq_status symseq_check_multipartite(const symseq_complex *overlaps, size_t n, int *sufficient,
                                                   int *failing_level);
SYMSEQ_API symseq_status symseq_check_copies_psk(double s_total, int n, int *sufficient, int *failing_level);

typedef enum symseq_scan_mode {
    SYMSEQ_SCAN_COMPLEX_K = 0,
    SYMSEQ_SCAN_PSK_GRID = 1,
    SYMSEQ_SCAN_COPIES = 2
} symseq_scan_mode;

typedef struct symseq_scan_spec {
    symseq_scan_mode mode;
    int resolution;
    double x_min, x_max;
    double y_min, y_max;
    int n_min, n_max;
} symseq_scan_spec;

/* Fills spec with the defaults for mode. */
SYMSEQ_API void symseq_scan_defaults(symseq_scan_mode mode, symseq_scan_spec *spec);
SYMSEQ_API symseq_status symseq_scan(const symseq_scan_spec *spec, const char *path);
SYMSEQ_API symseq_status symseq_curve_psk_global(double s_max, double step, const char *path);

#ifdef __cplusplus
}
#endif

#endif  // SYMSEQ_SYMSEQ_H
