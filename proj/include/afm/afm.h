/* Copyright 2026 The afmsim Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* C interface to the absorption-free measurement simulator.
 *
 * Every function returns AFM_OK on success; on failure the out-parameters are
 * left untouched and afm_last_error() describes the problem (thread-local).
 * Opaque handles are released with their matching _free function; freeing
 * NULL is a no-op.
 */

#ifndef AFMSIM_AFM_H
#define AFMSIM_AFM_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum afm_status {
    AFM_OK = 0,
    AFM_ERR_INVALID_ARGUMENT = 1, /* bad inputs or domain violations */
    AFM_ERR_NUMERICAL = 2,        /* non-convergence (e.g. no steady plateau) */
    AFM_ERR_INTERNAL = 3          /* engine self-check failure; please report */
} afm_status;

typedef struct afm_complex {
    double re;
    double im;
} afm_complex;

/* Thread-local message for the most recent failure in this thread. */
const char* afm_last_error(void);

/* ---- discrimination bound ------------------------------------------- */

typedef struct afm_bound_result {
    double eta;
    double eta_sq;
    double identity_gap;
} afm_bound_result;

afm_status afm_bound(afm_complex alpha1, afm_complex alpha2, afm_bound_result* out);

/* ---- protocols ------------------------------------------------------- */

typedef struct afm_protocol afm_protocol;

/* Which identification outcome counts as correct for a single-object run. */
#define AFM_ROLE_OBJECT1 1
#define AFM_ROLE_OBJECT2 2

typedef struct afm_run_trace {
    double p_ident;
    double p_notident;
    double p_interact;
    double final_norm_sq;
} afm_run_trace;

typedef struct afm_pair_report {
    double p_ident_1;
    double p_ident_2;
    double p_interact_1;
    double p_interact_2;
    afm_complex f_final;
    double lhs_cs;
    double rhs_cs;
    double lhs_final;
    double rhs_final;
    double product;  /* (1 - p_ident_1)(1 - p_ident_2) */
    double eta_sq;
    int cs_applicable;
    int cs_holds;
    int final_holds;
    int theorem_holds;
    double recursion_max_dev;
    double accounting_max_dev;
} afm_pair_report;

afm_status afm_protocol_elitzur_vaidman(afm_protocol** out);
afm_status afm_protocol_zeno_real(double alpha2, long n, afm_protocol** out);
afm_status afm_protocol_zeno_complex(afm_complex alpha2, long n, afm_protocol** out);
void afm_protocol_free(afm_protocol* protocol);

afm_status afm_protocol_run(const afm_protocol* protocol, afm_complex alpha, int role,
                            afm_run_trace* out);
afm_status afm_protocol_run_pair(const afm_protocol* protocol, afm_complex alpha1,
                                 afm_complex alpha2, afm_pair_report* out);

/* Repeat-on-inconclusive limit: p_ident / (1 - p_notident). */
afm_status afm_amplify(double p_ident, double p_notident, double p_interact, double* out);

/* ---- rotation schedules ---------------------------------------------- */

typedef struct afm_schedule afm_schedule;

void afm_schedule_free(afm_schedule* schedule);
long afm_schedule_size(const afm_schedule* schedule);
afm_status afm_schedule_angle(const afm_schedule* schedule, long index, double* out);

/* ---- quantum Zeno analytics ------------------------------------------ */

typedef struct afm_zeno_info {
    double theta;
    double theta_prime;
    double gamma;
    double predicted_p_ident_2;
} afm_zeno_info;

afm_status afm_zeno_analytics(double alpha2, long n, afm_zeno_info* out);

/* Analytics for the protocol actually built for alpha2 (real or complex
 * phase): theta, theta_prime and gamma refer to |alpha2|, and the predicted
 * identification probability multiplies the per-round gamma^2 factors. */
afm_status afm_zeno_build_info(afm_complex alpha2, long n, afm_zeno_info* out);

/* Signed rotation schedule of the protocol built for alpha2 (complex builds
 * list the opening rotation of each round). */
afm_status afm_zeno_schedule(afm_complex alpha2, long n, afm_schedule** out);

/* ---- near-optimal schedule search ------------------------------------ */

typedef struct afm_optimize_config {
    double alpha1;
    double alpha2;
    double epsilon;
    double lambda_lo;  /* <= 0: default 0.5 */
    double lambda_hi;  /* <= 0: default 2.0 */
    double orth_tol;   /* <= 0: default 1e-8 */
    long max_steps;    /* <= 0: default 1000000 */
} afm_optimize_config;

typedef struct afm_optimize_report {
    double lambda_star;
    long n_steps;
    double p_ident_1;
    double p_ident_2;
    double product;
    double eta_sq;
    double final_overlap;
    int success;
} afm_optimize_report;

/* schedule_out may be NULL when the angle sequence is not needed. */
afm_status afm_optimize(const afm_optimize_config* config, afm_optimize_report* out,
                        afm_schedule** schedule_out);

/* ---- Fabry-Perot cavity ---------------------------------------------- */

typedef struct afm_fp_config {
    double mirror_c;
    long lattice_halfwidth; /* <= 0: default 16 */
    long pulse_len;         /* <= 0: default 2048 */
    long t_steps;           /* <= 0: sized automatically */
} afm_fp_config;

typedef struct afm_fp_report {
    afm_complex fL_sim;
    afm_complex fR_sim;
    double p_interact;
    afm_complex fL_closed;
    double abs_err;
} afm_fp_report;

afm_status afm_fp_simulate(const afm_fp_config* config, afm_complex alpha, afm_fp_report* out);
afm_status afm_fp_closed_form(double mirror_c, afm_complex alpha, afm_complex* out);

/* Pair run (alpha1 = 1 vs alpha2) through the cavity protocol. A degenerate
 * alpha2 == 1 input is reported via AFM_ERR_INVALID_ARGUMENT. */
afm_status afm_fp_discriminate(double mirror_c, afm_complex alpha2, long pulse_len,
                               afm_pair_report* out);

/* ---- randomized theorem sweep ---------------------------------------- */

typedef struct afm_verify_report {
    long trials;
    long failures;
    double worst_slack;
} afm_verify_report;

afm_status afm_verify_sweep(unsigned long long seed, long trials, long dim_max,
                            afm_verify_report* out);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* AFMSIM_AFM_H */
