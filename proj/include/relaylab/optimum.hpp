// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <vector>

#include "relaylab/mc.hpp"
#include "relaylab/model.hpp"
#include "relaylab/schemes.hpp"

namespace relaylab::optimum {

// First-order condition of the high-SNR outage in theta.
//   NoiseLimited: a1 t^(N+1) - b1 (1-t)^(N+1) - c1 t (1-t)^N - d1 (1-t)^(N+1) ln(1-t)
//   MrcMrt:       sum_n a_n[n] (1-t)^(n-N-1) - b / t^(N+1)
//   ZfMrt:        a_n[0] (1-t)^-N - b / t^(N+1)
//   MmseMrt:      a_n[0] (1-t)^(-N-1) + a_n[1] (1-t)^-N - b / t^(N+1)
struct ThetaPolynomial {
    Scheme scheme = Scheme::NoiseLimited;
    int n = 1;
    double a1 = 0.0, b1 = 0.0, c1 = 0.0, d1 = 0.0;
    std::vector<double> a_n;
    double b = 0.0;
};

ThetaPolynomial theta_polynomial(Scheme s, const SystemParams& p);
double theta_condition(const ThetaPolynomial& poly, double theta);
// Sum of the term magnitudes at theta; scale for the relative residual.
double theta_condition_scale(const ThetaPolynomial& poly, double theta);

struct ThetaSolution {
    double theta_star = 0.0;
    double residual = 0.0;  // |condition| / scale at theta_star
    double bracket = 0.0;   // width of the final bisection interval
};

inline constexpr double kThetaLo = 1e-6;
inline constexpr double kThetaHi = 1.0 - 1e-6;

// Throws BracketFailure when the condition has no sign change on [kThetaLo, kThetaHi].
ThetaSolution optimal_theta(Scheme s, const SystemParams& p);

// Single-antenna MRC closed form sqrt(X)/(1+sqrt(X)).
double theta_closed_form_mrc(const SystemParams& p);

struct ThetaScan {
    std::vector<double> theta;
    std::vector<mc::McEstimate> estimate;
    double best_theta = 0.0;  // argmin for outage, argmax for capacity
};

// Grid on [0.02, 0.98], the same draws at every grid point. Ties resolve to
// the median of the tied thetas.
ThetaScan mc_theta_scan(Scheme s, const SystemParams& p, int grid_points, std::int64_t samples_per_point,
                        std::uint64_t seed, const mc::McConfig& cfg = {});
ThetaScan mc_capacity_theta_scan(Scheme s, const SystemParams& p, int grid_points,
                                 std::int64_t samples_per_point, std::uint64_t seed,
                                 const mc::McConfig& cfg = {});

}  // namespace relaylab::optimum
