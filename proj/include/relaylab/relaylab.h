/* SPDX-License-Identifier: Apache-2.0 */
#ifndef RELAYLAB_RELAYLAB_H
#define RELAYLAB_RELAYLAB_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(RELAYLAB_BUILDING)
#define RL_API __declspec(dllexport)
#else
#define RL_API __declspec(dllimport)
#endif
#else
#define RL_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum rl_status {
    RL_OK = 0,
    RL_INVALID_ARGUMENT = 1,
    RL_DEGENERATE_PARAMS = 2,
    RL_SCHEME_UNSUPPORTED = 3,
    RL_DOMAIN = 4,
    RL_CONVERGENCE = 5, /* output holds the best estimate reached */
    RL_BRACKET = 6,
    RL_NULL_HANDLE = 7,
    RL_INTERNAL = 8
} rl_status;

typedef enum rl_scheme {
    RL_SCHEME_NL = 0,
    RL_SCHEME_MRC = 1,
    RL_SCHEME_ZF = 2,
    RL_SCHEME_MMSE = 3
} rl_scheme;

typedef enum rl_param {
    RL_PARAM_N_ANTENNAS = 0,
    RL_PARAM_ETA,
    RL_PARAM_THETA,
    RL_PARAM_RHO1,
    RL_PARAM_RHO_I,
    RL_PARAM_D1,
    RL_PARAM_D2,
    RL_PARAM_D_I,
    RL_PARAM_TAU,
    RL_PARAM_GAMMA_TH
} rl_param;

typedef enum rl_high_snr_form {
    RL_HSNR_STANDARD = 0,
    RL_HSNR_ZF_TWO_TERM = 1,
    RL_HSNR_NL_INCOMPLETE = 2
} rl_high_snr_form;

typedef struct rl_params rl_params;
typedef struct rl_theta_scan rl_theta_scan;

typedef struct rl_mc_config {
    int workers;   /* 0: hardware concurrency */
    int64_t chunk; /* 0: default */
} rl_mc_config;

typedef struct rl_mc_estimate {
    double mean;
    double std_error;
    int64_t n_samples;
    uint64_t seed;
    rl_scheme scheme;
} rl_mc_estimate;

typedef struct rl_capacity_terms {
    double c_hop1;
    double c_hop2;
    double eln_hop1;
    double eln_hop2;
    double bound;
} rl_capacity_terms;

typedef struct rl_bound_factors {
    double f1;
    double f2;
    double probability;
} rl_bound_factors;

typedef struct rl_theta_solution {
    double theta_star;
    double residual;
    double bracket;
} rl_theta_solution;

/* Message of the last failing call on this thread; empty after success. */
RL_API const char* rl_last_error(void);
RL_API const char* rl_status_name(rl_status s);
RL_API const char* rl_scheme_name(rl_scheme s);
RL_API rl_status rl_scheme_parse(const char* name, rl_scheme* out);

/* Parameters start at the defaults; all values are linear. */
RL_API rl_status rl_params_create(rl_params** out);
RL_API rl_status rl_params_clone(const rl_params* p, rl_params** out);
RL_API void rl_params_destroy(rl_params* p);
RL_API rl_status rl_params_set(rl_params* p, rl_param id, double value);
RL_API rl_status rl_params_get(const rl_params* p, rl_param id, double* out);
/* Names: n, eta, theta, rho1, rho_i, d1, d2, d_i, tau, gamma_th. A _db
   suffix on rho1, rho_i or gamma_th takes the value in dB. */
RL_API rl_status rl_params_set_by_name(rl_params* p, const char* name, double value);
RL_API rl_status rl_params_validate(const rl_params* p);

RL_API rl_status rl_outage_exact_nl(const rl_params* p, double* out);
RL_API rl_status rl_outage_lower_bound(rl_scheme s, const rl_params* p, rl_bound_factors* out);
RL_API rl_status rl_outage_high_snr(rl_scheme s, const rl_params* p, rl_high_snr_form form, double* out);
RL_API rl_status rl_outage_high_snr_mrc_single_antenna(const rl_params* p, double* out);
RL_API rl_status rl_capacity_upper_bound(rl_scheme s, const rl_params* p, double* out);
RL_API rl_status rl_capacity_terms_eval(rl_scheme s, const rl_params* p, rl_capacity_terms* out);
RL_API rl_status rl_cdf_gamma_i1(rl_scheme s, double x, const rl_params* p, double* out);
RL_API rl_status rl_cdf_gamma_i2(double x, const rl_params* p, double* out);
RL_API rl_status rl_pdf_z(double x, const rl_params* p, double* out);
RL_API rl_status rl_array_gains(const rl_params* p, double* mrc, double* zf, double* mmse);
RL_API rl_status rl_cci_effect_indicator(const rl_params* p, double* out);

/* cfg may be NULL. */
RL_API rl_status rl_mc_outage(rl_scheme s, const rl_params* p, int64_t n_samples, uint64_t seed,
                              const rl_mc_config* cfg, rl_mc_estimate* out);
RL_API rl_status rl_mc_capacity(rl_scheme s, const rl_params* p, int64_t n_samples, uint64_t seed,
                                const rl_mc_config* cfg, rl_mc_estimate* out);
/* n_cases cases on shared draws; either output array may be NULL. */
RL_API rl_status rl_mc_joint(size_t n_cases, const rl_scheme* schemes, const rl_params* const* params,
                             int64_t n_samples, uint64_t seed, const rl_mc_config* cfg,
                             rl_mc_estimate* outage, rl_mc_estimate* capacity);

RL_API rl_status rl_optimal_theta(rl_scheme s, const rl_params* p, rl_theta_solution* out);
RL_API rl_status rl_theta_closed_form_mrc(const rl_params* p, double* out);

/* capacity != 0 scans capacity (argmax) instead of outage (argmin). */
RL_API rl_status rl_theta_scan_run(rl_scheme s, const rl_params* p, int grid_points, int64_t samples_per_point,
                                   uint64_t seed, const rl_mc_config* cfg, int capacity, rl_theta_scan** out);
RL_API size_t rl_theta_scan_size(const rl_theta_scan* scan);
RL_API rl_status rl_theta_scan_point(const rl_theta_scan* scan, size_t i, double* theta, rl_mc_estimate* est);
RL_API rl_status rl_theta_scan_best(const rl_theta_scan* scan, double* theta);
RL_API void rl_theta_scan_destroy(rl_theta_scan* scan);

#ifdef __cplusplus
}
#endif

#endif
