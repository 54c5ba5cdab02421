// SPDX-License-Identifier: Apache-2.0
#include "relaylab/specfun.hpp"

#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/special_functions/digamma.hpp>
#include <boost/math/special_functions/expint.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "relaylab/errors.hpp"
#include "relaylab/quadrature.hpp"

namespace relaylab::specfun {
namespace {

constexpr int kMaxTerms = 100000;
constexpr double kEps = std::numeric_limits<double>::epsilon();

bool is_nonpositive_integer(double v) { return v <= 0.0 && v == std::floor(v); }

double rgamma(double x) {
    if (is_nonpositive_integer(x)) return 0.0;
    return 1.0 / std::tgamma(x);
}

[[noreturn]] void domain(const std::string& what) { throw DomainError(what); }

// e^x x^-a Gamma(a, x) by the Legendre continued fraction (modified Lentz); x > max(1, a+1).
double upper_gamma_cf_core(double a, double x) {
    const double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < kMaxTerms; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < kEps) return h;
    }
    throw ConvergenceError("upper_inc_gamma: continued fraction did not converge", h, 1.0);
}

double upper_gamma_cf(double a, double x) {
    return std::exp(-x + a * std::log(x)) * upper_gamma_cf_core(a, x);
}

double series_2f1(double a, double b, double c, double z) {
    double term = 1.0;
    double sum = 1.0;
    for (int k = 0; k < kMaxTerms; ++k) {
        const double ratio = (a + k) * (b + k) / ((c + k) * (k + 1.0)) * z;
        term *= ratio;
        sum += term;
        if (term == 0.0) return sum;
        const double next = (a + k + 1) * (b + k + 1) / ((c + k + 1) * (k + 2.0)) * z;
        if (std::abs(term) <= kEps * std::abs(sum) && std::abs(next) < 1.0) return sum;
    }
    throw ConvergenceError("gauss_2f1: series did not converge", sum, std::abs(term / sum));
}

// 2F1 on (0.75, 1) through the 1 - w connection formulas, with the
// logarithmic variants when c - a - b is an integer.
double connection_2f1(double a, double b, double c, double w) {
    const double y = 1.0 - w;
    const double m = c - a - b;
    const double mi = std::round(m);
    const double ln_y = std::log(y);

    if (std::abs(m - mi) > 1e-12) {
        const double t1 = std::tgamma(c) * std::tgamma(m) * rgamma(c - a) * rgamma(c - b) *
                          series_2f1(a, b, 1.0 - m, y);
        const double t2 = std::pow(y, m) * std::tgamma(c) * std::tgamma(-m) * rgamma(a) *
                          rgamma(b) * series_2f1(c - a, c - b, m + 1.0, y);
        return t1 + t2;
    }

    const int mm = static_cast<int>(std::abs(mi));
    if (mm == 0) {
        const double pre = std::tgamma(c) * rgamma(a) * rgamma(b);
        double coef = 1.0;
        double psi1 = -euler_gamma;
        double psia = boost::math::digamma(a);
        double psib = boost::math::digamma(b);
        double sum = 0.0;
        for (int n = 0; n < kMaxTerms; ++n) {
            const double term = coef * (2.0 * psi1 - psia - psib - ln_y);
            sum += term;
            if (n > 2 && std::abs(term) <= kEps * std::abs(sum)) return pre * sum;
            coef *= (a + n) * (b + n) / ((n + 1.0) * (n + 1.0)) * y;
            psi1 += 1.0 / (n + 1.0);
            psia += 1.0 / (a + n);
            psib += 1.0 / (b + n);
        }
        throw ConvergenceError("gauss_2f1: logarithmic series did not converge", pre * sum, 1.0);
    }

    double finite = 0.0;
    double infinite = 0.0;
    double pre1 = 0.0;
    double pre2 = 0.0;
    // Parameters of the finite part (p, q) and of the log series (u, v).
    double p = a, q = b, u = a, v = b;
    if (mi > 0) {
        pre1 = std::tgamma(mm) * std::tgamma(c) * rgamma(a + mm) * rgamma(b + mm);
        pre2 = -std::pow(-y, mm) * std::tgamma(c) * rgamma(a) * rgamma(b);
        u = a + mm;
        v = b + mm;
    } else {
        pre1 = std::tgamma(mm) * std::tgamma(c) * rgamma(a) * rgamma(b) * std::pow(y, -mm);
        pre2 = -((mm % 2 == 0) ? 1.0 : -1.0) * std::tgamma(c) * rgamma(a - mm) * rgamma(b - mm);
        p = a - mm;
        q = b - mm;
    }
    {
        double t = 1.0;
        for (int n = 0; n < mm; ++n) {
            finite += t;
            t *= (p + n) * (q + n) / ((n + 1.0) * (1.0 - mm + n)) * y;
        }
    }
    if (pre2 != 0.0) {
        double coef = 1.0 / std::tgamma(mm + 1.0);
        double psi1 = -euler_gamma;
        double psim = boost::math::digamma(mm + 1.0);
        double psiu = boost::math::digamma(u);
        double psiv = boost::math::digamma(v);
        bool done = false;
        for (int n = 0; n < kMaxTerms; ++n) {
            const double term = coef * (ln_y - psi1 - psim + psiu + psiv);
            infinite += term;
            if (n > 2 && std::abs(term) <= kEps * std::abs(infinite)) {
                done = true;
                break;
            }
            coef *= (u + n) * (v + n) / ((n + 1.0) * (n + mm + 1.0)) * y;
            psi1 += 1.0 / (n + 1.0);
            psim += 1.0 / (n + mm + 1.0);
            psiu += 1.0 / (u + n);
            psiv += 1.0 / (v + n);
        }
        if (!done)
            throw ConvergenceError("gauss_2f1: logarithmic series did not converge",
                                   pre1 * finite + pre2 * infinite, 1.0);
    }
    return pre1 * finite + pre2 * infinite;
}

}  // namespace

double ln_gamma(double x) {
    if (!(x > 0.0)) domain("ln_gamma: x must be positive");
    return std::lgamma(x);
}

double digamma(double x) {
    if (!(x > 0.0)) domain("digamma: x must be positive");
    return boost::math::digamma(x);
}

double upper_inc_gamma(double a, double x) {
    if (!(x >= 0.0)) domain("upper_inc_gamma: x must be nonnegative");
    if (a > 0.0) return boost::math::tgamma(a, x);
    if (x == 0.0) domain("upper_inc_gamma: a <= 0 requires x > 0");
    if (a == 0.0) return boost::math::expint(1, x);
    if (x > 1.0) return upper_gamma_cf(a, x);
    // Downward recurrence Gamma(s,x) = (Gamma(s+1,x) - x^s e^-x)/s from s0 in [0,1).
    const int k = static_cast<int>(std::ceil(-a));
    double s = a + k;
    double g = (s == 0.0) ? boost::math::expint(1, x) : boost::math::tgamma(s, x);
    const double ex = std::exp(-x);
    for (int i = 0; i < k; ++i) {
        s -= 1.0;
        g = (g - std::pow(x, s) * ex) / s;
    }
    return g;
}

double upper_inc_gamma_scaled(double a, double x) {
    if (x > 1.0 && x > a + 1.0) return std::exp(a * std::log(x)) * upper_gamma_cf_core(a, x);
    return std::exp(x) * upper_inc_gamma(a, x);
}

double gamma_q(double n, double x) {
    if (!(n > 0.0) || !(x >= 0.0)) domain("gamma_q: need n > 0, x >= 0");
    return boost::math::gamma_q(n, x);
}

double upper_inc_gamma_da(double a, double z) {
    if (!(z > 0.0) && !(z == 0.0 && a > 0.0)) domain("upper_inc_gamma_da: need z > 0");
    quad::QuadratureSpec spec{1e-12, 0.0, 4000};
    auto f = [a](double t) {
        if (t <= 0.0) return 0.0;
        return std::exp((a - 1.0) * std::log(t) - t) * std::log(t);
    };
    // Split at 1 where ln t changes sign.
    if (z < 1.0) return quad::integrate(f, z, 1.0, spec) + quad::integrate_inf(f, 1.0, spec);
    return quad::integrate_inf(f, z, spec);
}

double upper_inc_gamma_da_scaled(double a, double z) {
    if (z < 1.0) return std::exp(z) * upper_inc_gamma_da(a, z);
    // t = z + s; integrand is positive for z >= 1.
    quad::QuadratureSpec spec{1e-12, 0.0, 4000};
    auto f = [a, z](double s) {
        const double t = z + s;
        return std::exp((a - 1.0) * std::log(t) - s) * std::log(t);
    };
    return quad::integrate_inf(f, 0.0, spec);
}

double exp_integral_ei(double x) {
    if (!(x < 0.0)) domain("exp_integral_ei: only x < 0 is supported");
    return -boost::math::expint(1, -x);
}

double bessel_k_int(int n, double x) {
    if (!(x > 0.0)) domain("bessel_k_int: x must be positive");
    return boost::math::cyl_bessel_k(static_cast<double>(n < 0 ? -n : n), x);
}

double log_bessel_k_int(int n, double x) {
    if (!(x > 0.0)) domain("log_bessel_k_int: x must be positive");
    const int order = n < 0 ? -n : n;
    if (x < 600.0) {
        // Upward recurrence on the ratios K_{k+1}/K_k; K_n itself may overflow.
        const double k0 = boost::math::cyl_bessel_k(0.0, x);
        double lk = std::log(k0);
        if (order == 0) return lk;
        double r = boost::math::cyl_bessel_k(1.0, x) / k0;
        lk += std::log(r);
        for (int k = 1; k < order; ++k) {
            r = 1.0 / r + 2.0 * k / x;
            lk += std::log(r);
        }
        return lk;
    }
    const double mu = 4.0 * order * order;
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k < 30; ++k) {
        term *= (mu - (2.0 * k - 1) * (2.0 * k - 1)) / (k * 8.0 * x);
        sum += term;
        if (std::abs(term) < kEps * std::abs(sum)) break;
    }
    return 0.5 * std::log(std::numbers::pi / (2.0 * x)) - x + std::log(sum);
}

double gauss_2f1(double a, double b, double c, double z, const Accuracy&) {
    if (is_nonpositive_integer(c)) domain("gauss_2f1: c is a nonpositive integer");
    if (!(z < 1.0)) domain("gauss_2f1: requires z < 1");
    if (z == 0.0) return 1.0;
    if (is_nonpositive_integer(a) || is_nonpositive_integer(b)) return series_2f1(a, b, c, z);
    if (z < 0.0) {
        const double w = z / (z - 1.0);
        return std::pow(1.0 - z, -a) * gauss_2f1(a, c - b, c, w);
    }
    if (z <= 0.75) return series_2f1(a, b, c, z);
    return connection_2f1(a, b, c, z);
}

double kummer_u(double a, double b, double z) {
    if (!(a > 0.0) || !(z > 0.0)) domain("kummer_u: need a > 0 and z > 0");
    quad::QuadratureSpec spec{1e-13, 0.0, 4000};
    const double p = b - a - 1.0;
    auto g = [z, p](double s) { return std::exp(-s + p * std::log1p(s / z)); };
    double head = 0.0;
    if (a < 1.0) {
        // s = u^(1/a) removes the s^(a-1) endpoint singularity.
        head = quad::integrate([&](double u) { return g(std::pow(u, 1.0 / a)); }, 0.0, 1.0, spec) / a;
    } else {
        head = quad::integrate([&](double s) { return std::pow(s, a - 1.0) * g(s); }, 0.0, 1.0, spec);
    }
    const double tail = quad::integrate_inf(
        [&](double s) { return std::exp((a - 1.0) * std::log(s) - s + p * std::log1p(s / z)); }, 1.0,
        spec);
    return std::exp(-a * std::log(z) - std::lgamma(a)) * (head + tail);
}

}  // namespace relaylab::specfun
