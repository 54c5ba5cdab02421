// SPDX-License-Identifier: Apache-2.0
#pragma once

namespace relaylab::specfun {

inline constexpr double euler_gamma = 0.57721566490153286060651209008240243;

struct Accuracy {
    double rel_tol = 1e-10;
    double abs_tol = 1e-14;
};

double ln_gamma(double x);
double digamma(double x);

// Gamma(a, x) for any real a; a <= 0 needs x > 0.
double upper_inc_gamma(double a, double x);

// e^x Gamma(a, x), finite where Gamma(a, x) underflows.
double upper_inc_gamma_scaled(double a, double x);

// Gamma(n, x) / Gamma(n), n > 0.
double gamma_q(double n, double x);

// d Gamma(a, z) / da = int_z^inf t^(a-1) ln(t) e^(-t) dt, by quadrature.
double upper_inc_gamma_da(double a, double z);
// e^z d Gamma(a, z) / da.
double upper_inc_gamma_da_scaled(double a, double z);

// Ei(x) for x < 0.
double exp_integral_ei(double x);

// K_n(x); K_{-n} and K_n share one evaluation.
double bessel_k_int(int n, double x);
// ln K_n(x), finite where K_n underflows.
double log_bessel_k_int(int n, double x);

// 2F1(a, b; c; z) for z < 1.
double gauss_2f1(double a, double b, double c, double z, const Accuracy& acc = {});

// Tricomi U(a, b; z) for a > 0, z > 0.
double kummer_u(double a, double b, double z);

}  // namespace relaylab::specfun
