// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "relaylab/model.hpp"
#include "relaylab/quadrature.hpp"
#include "relaylab/schemes.hpp"

namespace relaylab::analysis {

using quad::QuadratureSpec;

struct OutageCoeffs {
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
    double d = 0.0;
};

OutageCoeffs outage_coeffs(const SystemParams& p);

// Exact outage of the interference-free system as a single integral.
double outage_exact_nl(const SystemParams& p, const QuadratureSpec& spec = {});

// Bound = 1 - f1*f2. For NoiseLimited f1 carries the whole Bessel-K
// complement and f2 = 1.
struct OutageBoundFactors {
    double f1 = 1.0;
    double f2 = 1.0;
    double probability = 0.0;
};

OutageBoundFactors outage_lower_bound(Scheme s, const SystemParams& p);

enum class HighSnrForm {
    Standard,       // default closed form of each scheme (one-term for ZF)
    ZfTwoTerm,      // ZF with the second-hop term kept
    NlIncomplete,   // noise-limited form before the small-argument expansion
};

double outage_high_snr(Scheme s, const SystemParams& p, HighSnrForm form = HighSnrForm::Standard);

// Single-antenna MRC closed form with the ln-ratio second-hop term.
double outage_high_snr_mrc_single_antenna(const SystemParams& p);

// sum_i C(N-1,i)(-1)^(N-i-1) 2F1(N,2N-i-1;2N-i;1-r)/(2N-i-1), r = d1 rho_i/(d_i rho1).
double second_hop_sum(int n, double r);
// The alternating sum evaluated term by term.
double second_hop_sum_alternating(int n, double r);

double cdf_gamma_i1(Scheme s, double x, const SystemParams& p);
double cdf_gamma_i2(double x, const SystemParams& p);
double pdf_z(double x, const SystemParams& p);
// Density of Z from the gamma convolution (1F1 form); used where the
// finite-sum form loses precision.
double pdf_z_convolution(double x, const SystemParams& p);
double mean_log_z(const SystemParams& p);

struct ArrayGains {
    double mrc = 0.0;
    double zf = 0.0;
    double mmse = 0.0;
};

ArrayGains array_gain_terms(const SystemParams& p);

// Positive when the interferer hurts single-antenna MRC relative to the
// interference-free high-SNR approximation.
double cci_effect_indicator(const SystemParams& p);

struct CapacityTerms {
    double c_hop1 = 0.0;
    double c_hop2 = 0.0;
    double eln_hop1 = 0.0;  // E[ln gamma_1]
    double eln_hop2 = 0.0;  // E[ln gamma_2]
    double bound = 0.0;
};

CapacityTerms capacity_terms(Scheme s, const SystemParams& p, const QuadratureSpec& spec = {});
double capacity_upper_bound(Scheme s, const SystemParams& p, const QuadratureSpec& spec = {});

}  // namespace relaylab::analysis
