// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <limits>

namespace relaylab::quad {

struct QuadratureSpec {
    double rel_tol = 1e-8;
    double abs_tol = 1e-12;
    int max_subdivisions = 2000;
};

struct QuadResult {
    double value = 0.0;
    double abs_error = 0.0;
    int subdivisions = 0;
    bool converged = false;
};

using Integrand = std::function<double(double)>;

// Globally adaptive 10/21-point Gauss-Kronrod on [a, b].
QuadResult gauss_kronrod(const Integrand& f, double a, double b, const QuadratureSpec& spec = {});

// Integral over [lower, inf) through x = lower + t/(1-t).
QuadResult gauss_kronrod_inf(const Integrand& f, double lower, const QuadratureSpec& spec = {});

// Throwing wrappers: ConvergenceError carries the partial value.
double integrate(const Integrand& f, double a, double b, const QuadratureSpec& spec = {});
double integrate_inf(const Integrand& f, double lower, const QuadratureSpec& spec = {});

}  // namespace relaylab::quad
