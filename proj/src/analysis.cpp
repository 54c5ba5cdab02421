// SPDX-License-Identifier: Apache-2.0
#include "relaylab/analysis.hpp"

#include <algorithm>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/special_functions/hypergeometric_1F1.hpp>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <vector>

#include "relaylab/errors.hpp"
#include "relaylab/specfun.hpp"

namespace relaylab::analysis {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kLn2 = std::numbers::ln2;

// Finite sums are trusted while eps * sum|t_k| stays below this fraction of the result.
constexpr double kSumTrust = 1e-7;

struct Derived {
    int n;
    double d1, d2, di;
    double lam1, lami;  // first-hop mean SNR and INR after splitting
    double mu1, mui;    // rho/d^tau before splitting
    double a1, ai;      // 1/mu1, 1/mui
    double eta, theta;
};

Derived derive(const SystemParams& p) {
    Derived q{};
    q.n = p.n_antennas;
    q.d1 = p.d1_tau();
    q.d2 = p.d2_tau();
    q.di = p.di_tau();
    q.lam1 = (1.0 - p.theta) * p.rho1 / q.d1;
    q.lami = (1.0 - p.theta) * p.rho_i / q.di;
    q.mu1 = p.rho1 / q.d1;
    q.mui = p.rho_i / q.di;
    q.a1 = q.d1 / p.rho1;
    q.ai = p.rho_i > 0.0 ? q.di / p.rho_i : std::numeric_limits<double>::infinity();
    q.eta = p.eta;
    q.theta = p.theta;
    return q;
}

bool degenerate_theta(const SystemParams& p) { return p.theta <= 0.0 || p.theta >= 1.0; }

void require_scheme(Scheme s, const SystemParams& p) {
    if (s == Scheme::ZfMrt && p.n_antennas < 2)
        throw SchemeUnsupported("ZF/MRT requires at least two relay antennas");
}

void require_interference(const SystemParams& p) {
    if (!(p.rho_i > 0.0)) throw DomainError("rho_i must be positive for the interference analysis");
}

void require_distinct(const SystemParams& p) {
    require_interference(p);
    if (p.rho1 / p.d1_tau() == p.rho_i / p.di_tau())
        throw DegenerateParams("rho1/d1^tau equals rho_i/d_i^tau; closed forms are undefined");
}

struct SumValue {
    double value;
    double abs_sum;
    double error;  // rounding bound; exp(L) carries about eps |L| relative error
    bool trusted(double tol = kSumTrust) const {
        return std::isfinite(value) && error <= tol * std::abs(value);
    }
};

// Accumulates sign * exp(log_mag) without overflow.
class SignedLogSum {
public:
    void add(double log_mag, int sign) {
        if (sign == 0 || log_mag == -std::numeric_limits<double>::infinity()) return;
        terms_.push_back({log_mag, sign});
        top_ = std::max(top_, log_mag);
    }
    SumValue result() const {
        if (terms_.empty()) return {0.0, 0.0, 0.0};
        double s = 0.0, a = 0.0, e = 0.0;
        for (const auto& t : terms_) {
            const double v = std::exp(t.log_mag - top_);
            s += t.sign * v;
            a += v;
            e += v * (4.0 + std::abs(t.log_mag));
        }
        const double scale = std::exp(top_);
        return {s * scale, a * scale, kEps * e * scale};
    }

private:
    struct Term {
        double log_mag;
        int sign;
    };
    std::vector<Term> terms_;
    double top_ = -std::numeric_limits<double>::infinity();
};

int sign_of(double v) { return v < 0.0 ? -1 : 1; }

// sign of base^e for integer e.
int sign_pow(double base, int e) { return (base < 0.0 && e % 2 != 0) ? -1 : 1; }

// Coefficient prod_{j=1}^{s-1}(1-N-j) / ((N-s)!(s-1)!) of the sum-of-gammas density.
double log_coef(int n, int s) {
    double l = 0.0;
    for (int j = 1; j <= s - 1; ++j) l += std::log(static_cast<double>(n + j - 1));
    return l - std::lgamma(n - s + 1.0) - std::lgamma(static_cast<double>(s));
}
int sign_coef(int s) { return ((s - 1) % 2 == 0) ? 1 : -1; }

double gamma_p(double n, double x) {
    if (x <= 0.0) return 0.0;
    if (!std::isfinite(x)) return 1.0;
    return boost::math::gamma_p(n, x);
}

QuadratureSpec relative_only(const QuadratureSpec& s) {
    QuadratureSpec out = s;
    out.abs_tol = 1e-300;
    return out;
}

// int_0^inf f(x) dx on the log axis, x = e^y, split at y = center.
double integrate_log_axis(const std::function<double(double)>& f, double center,
                          const QuadratureSpec& spec) {
    auto g = [&](double y) {
        const double x = std::exp(y);
        if (x == 0.0 || !std::isfinite(x)) return 0.0;
        const double v = f(x) * x;
        return std::isfinite(v) ? v : 0.0;
    };
    const double right = quad::integrate_inf([&](double u) { return g(center + u); }, 0.0, spec);
    const double left = quad::integrate_inf([&](double u) { return g(center - u); }, 0.0, spec);
    return left + right;
}

// ---- sum of two gamma variables, Z = mu1 G1 + mui Gi -------------------------

SumValue pdf_z_sum(double x, const Derived& q) {
    const int n = q.n;
    const double delta = q.ai - q.a1;
    const double base = n * (std::log(q.a1) + std::log(q.ai));
    const double ld = std::log(std::abs(delta));
    SignedLogSum acc;
    for (int s = 1; s <= n; ++s) {
        const int e = 1 - n - s;
        const double common = base + log_coef(n, s) + e * ld + (n - s) * std::log(x);
        acc.add(common - x * q.a1, sign_coef(s) * sign_pow(delta, e));
        acc.add(common - x * q.ai, sign_coef(s) * sign_pow(-delta, e));
    }
    return acc.result();
}

double pdf_z_stable(double x, const Derived& q) {
    const int n = q.n;
    const double lo = std::min(q.a1, q.ai);
    const double hi = std::max(q.a1, q.ai);
    const double logpre = n * (std::log(q.a1) + std::log(q.ai)) + (2.0 * n - 1.0) * std::log(x) -
                          lo * x - std::lgamma(2.0 * n);
    return std::exp(logpre) *
           boost::math::hypergeometric_1F1(static_cast<double>(n), 2.0 * n, -(hi - lo) * x);
}

double pdf_z_impl(double x, const Derived& q) {
    if (x <= 0.0) return 0.0;
    const SumValue v = pdf_z_sum(x, q);
    if (v.trusted() || v.abs_sum == 0.0) return std::max(0.0, v.value);
    return pdf_z_stable(x, q);
}

double z_center(const Derived& q) { return std::log(q.n * (q.mu1 + q.mui)); }

// Complement of the gamma_I2 cdf as the double Bessel-K sum.
SumValue ccdf_i2_sum(double x, const Derived& q) {
    const int n = q.n;
    const double b = q.d2 * x / (q.eta * q.theta);
    const double delta = q.ai - q.a1;
    const double ld = std::log(std::abs(delta));
    const double base = std::log(2.0) + n * (std::log(q.a1) + std::log(q.ai));
    const double beta1 = b * q.a1;
    const double betai = b * q.ai;
    SignedLogSum acc;
    for (int s = 1; s <= n; ++s) {
        const int e = 1 - n - s;
        for (int m = 0; m <= n - 1; ++m) {
            const int nu = m + s - n - 1;
            const double common =
                base + log_coef(n, s) - std::lgamma(m + 1.0) + (n + 1 - s) * std::log(b) + e * ld;
            acc.add(common + 0.5 * nu * std::log(beta1) +
                        specfun::log_bessel_k_int(nu, 2.0 * std::sqrt(beta1)),
                    sign_coef(s) * sign_pow(delta, e));
            acc.add(common + 0.5 * nu * std::log(betai) +
                        specfun::log_bessel_k_int(nu, 2.0 * std::sqrt(betai)),
                    sign_coef(s) * sign_pow(-delta, e));
        }
    }
    return acc.result();
}

double cdf_i2_stable(double x, const Derived& q) {
    const double b = q.d2 * x / (q.eta * q.theta);
    QuadratureSpec spec{1e-10, 1e-300, 4000};
    auto f = [&](double z) { return gamma_p(q.n, b / z) * pdf_z_stable(z, q); };
    return std::clamp(integrate_log_axis(f, z_center(q), spec), 0.0, 1.0);
}

double cdf_i2_impl(double x, const Derived& q) {
    if (x <= 0.0) return 0.0;
    const SumValue c = ccdf_i2_sum(x, q);
    const double cdf = 1.0 - c.value;
    if (cdf > 0.0 && c.error <= 1e-6 * cdf) return std::min(cdf, 1.0);
    return cdf_i2_stable(x, q);
}

double mean_log_z_impl(const Derived& q) {
    const int n = q.n;
    const double delta = q.ai - q.a1;
    const double ld = std::log(std::abs(delta));
    const double base = n * (std::log(q.a1) + std::log(q.ai));
    SignedLogSum acc;
    for (int s = 1; s <= n; ++s) {
        const int e = 1 - n - s;
        const double k = n - s + 1.0;
        const double common = base + log_coef(n, s) + std::lgamma(k) + e * ld;
        const double psi = specfun::digamma(k);
        const double t1 = psi + std::log(q.mu1);
        const double ti = psi + std::log(q.mui);
        acc.add(common + k * std::log(q.mu1) + std::log(std::abs(t1)),
                sign_coef(s) * sign_pow(delta, e) * sign_of(t1));
        acc.add(common + k * std::log(q.mui) + std::log(std::abs(ti)),
                sign_coef(s) * sign_pow(-delta, e) * sign_of(ti));
    }
    const SumValue v = acc.result();
    if (v.error <= 1e-9 * std::max(std::abs(v.value), 1.0)) return v.value;
    QuadratureSpec spec{1e-10, 1e-13, 4000};
    return integrate_log_axis([&](double z) { return std::log(z) * pdf_z_stable(z, q); },
                              z_center(q), spec);
}

// 1/2 E[log2(1 + lam G)], G ~ Gamma(shape, 1).
double erlang_capacity(int shape, double lam) {
    const double z = 1.0 / lam;
    double acc = 0.0;
    for (int k = 0; k < shape; ++k)
        acc += std::exp(-k * std::log(lam)) * specfun::upper_inc_gamma_scaled(-k, z);
    return acc / (2.0 * kLn2);
}

double second_hop_capacity(const Derived& q, const QuadratureSpec& spec) {
    const int n = q.n;
    const double delta = q.ai - q.a1;
    const double ld = std::log(std::abs(delta));
    const double g = q.d2 / (q.eta * q.theta);
    const double kap1 = g * q.a1;
    const double kapi = g * q.ai;
    const double pre = n * (std::log(q.a1) + std::log(q.ai)) - std::log(kLn2);
    QuadratureSpec tight = relative_only(spec);
    tight.rel_tol = std::min(spec.rel_tol, 1e-10);
    auto bessel_integral = [&](int s, int nu, double kap) {
        auto f = [=](double x) {
            const double beta = kap * x;
            return std::exp((n + 1 - s) * std::log(x) - std::log1p(x) + 0.5 * nu * std::log(beta) +
                            specfun::log_bessel_k_int(nu, 2.0 * std::sqrt(beta)));
        };
        return integrate_log_axis(f, 0.0, tight);
    };
    SignedLogSum acc;
    for (int s = 1; s <= n; ++s) {
        const int e = 1 - n - s;
        for (int m = 0; m <= n - 1; ++m) {
            const int nu = m + s - n - 1;
            const double common =
                pre + log_coef(n, s) - std::lgamma(m + 1.0) + (n + 1 - s) * std::log(g) + e * ld;
            acc.add(common + std::log(bessel_integral(s, nu, kap1)), sign_coef(s) * sign_pow(delta, e));
            acc.add(common + std::log(bessel_integral(s, nu, kapi)), sign_coef(s) * sign_pow(-delta, e));
        }
    }
    const SumValue v = acc.result();
    if (v.error + tight.rel_tol * v.abs_sum <= 1e-6 * std::abs(v.value)) return v.value;
    // Ill-conditioned sum: integrate the complementary cdf directly.
    QuadratureSpec outer{1e-8, 1e-14, 4000};
    const double c = integrate_log_axis(
        [&](double x) { return (1.0 - cdf_i2_stable(x, q)) / (1.0 + x); }, 0.0, outer);
    return c / (2.0 * kLn2);
}

double high_snr_nl(const SystemParams& p, const Derived& q) {
    const double n = q.n;
    const double g = p.gamma_th;
    const double lead = std::pow(q.d1 * g / p.rho1, n) / std::tgamma(n + 1.0);
    const double logterm = std::log((1.0 - p.theta) * p.rho1) - std::log(q.d1 * g) - specfun::euler_gamma;
    return lead * (std::pow(1.0 - p.theta, -n) +
                   logterm / std::tgamma(n) * std::pow(q.d2 / (p.eta * p.theta), n));
}

double high_snr_nl_incomplete(const SystemParams& p, const Derived& q) {
    const double n = q.n;
    const double t = p.gamma_th * q.d1 / ((1.0 - p.theta) * p.rho1);
    return gamma_p(n, t) - specfun::exp_integral_ei(-t) / (std::tgamma(n + 1.0) * std::tgamma(n)) *
                               std::pow(p.gamma_th * q.d1 * q.d2 / (p.eta * p.theta * p.rho1), n);
}

double r_ratio(const SystemParams& p) { return p.d1_tau() * p.rho_i / (p.di_tau() * p.rho1); }

}  // namespace

OutageCoeffs outage_coeffs(const SystemParams& p) {
    const double d1 = p.d1_tau();
    const double d2 = p.d2_tau();
    OutageCoeffs c;
    c.a = (1.0 - p.theta) * p.rho1 * p.gamma_th / d1;
    c.b = p.gamma_th;
    c.c = p.eta * p.theta * (1.0 - p.theta) * p.rho1 * p.rho1 / (d1 * d1 * d2);
    c.d = p.eta * p.theta * p.rho1 * p.gamma_th / (d1 * d2);
    return c;
}

double outage_exact_nl(const SystemParams& p, const QuadratureSpec& spec) {
    validate(p);
    if (degenerate_theta(p)) return 1.0;
    const OutageCoeffs k = outage_coeffs(p);
    const int n = p.n_antennas;
    const double x0 = k.d / k.c;
    // P = P(||h1||^2 < d/c) + int_{d/c}^inf P(||h2||^2 < (ax+b)/(cx^2-dx)) f_N(x) dx;
    // identical to one minus the complementary integral, without cancellation.
    const double head = gamma_p(n, x0);
    const double lgn = std::lgamma(static_cast<double>(n));
    auto f = [&](double x) {
        const double den = k.c * x * x - k.d * x;
        if (den <= 0.0) return std::exp((n - 1) * std::log(x) - x - lgn);
        const double dens = std::exp((n - 1) * std::log(x) - x - lgn);
        return gamma_p(n, (k.a * x + k.b) / den) * dens;
    };
    QuadratureSpec s = spec;
    s.abs_tol = spec.abs_tol * std::max(head, 1e-300);
    const double tail = quad::integrate_inf(f, x0, s);
    return std::clamp(head + tail, 0.0, 1.0);
}

OutageBoundFactors outage_lower_bound(Scheme scheme, const SystemParams& p) {
    validate(p);
    require_scheme(scheme, p);
    if (scheme != Scheme::NoiseLimited) require_distinct(p);
    OutageBoundFactors out;
    if (degenerate_theta(p)) {
        out.f1 = 0.0;
        out.f2 = 0.0;
        out.probability = 1.0;
        return out;
    }
    if (scheme == Scheme::NoiseLimited) {
        const OutageCoeffs k = outage_coeffs(p);
        const int n = p.n_antennas;
        const double dc = k.d / k.c;
        const double ac = k.a / k.c;
        const double arg = 2.0 * std::sqrt(ac);
        double total = 0.0;
        for (int i = 0; i <= n - 1; ++i) {
            for (int j = 0; j <= n - 1; ++j) {
                const double lbin =
                    std::lgamma(n + 0.0) - std::lgamma(j + 1.0) - std::lgamma(n - j + 0.0);
                const double l = std::log(2.0) - dc - std::lgamma(n + 0.0) - std::lgamma(i + 1.0) +
                                 lbin + (n - j - 1) * std::log(dc) + 0.5 * (i + j + 1) * std::log(ac) +
                                 specfun::log_bessel_k_int(i - j - 1, arg);
                total += std::exp(l);
            }
        }
        out.f1 = std::min(total, 1.0);
        out.f2 = 1.0;
        out.probability = std::clamp(1.0 - total, 0.0, 1.0);
        return out;
    }
    const double e1 = cdf_gamma_i1(scheme, p.gamma_th, p);
    const double e2 = cdf_gamma_i2(p.gamma_th, p);
    out.f1 = 1.0 - e1;
    out.f2 = 1.0 - e2;
    out.probability = std::clamp(e1 + e2 - e1 * e2, 0.0, 1.0);
    return out;
}

double second_hop_sum_alternating(int n, double r) {
    if (n < 1 || !(r > 0.0)) throw DomainError("second_hop_sum: need n >= 1 and r > 0");
    double sum = 0.0;
    for (int i = 0; i <= n - 1; ++i) {
        const double bin = std::exp(std::lgamma(n + 0.0) - std::lgamma(i + 1.0) - std::lgamma(n - i + 0.0));
        const double sgn = ((n - i - 1) % 2 == 0) ? 1.0 : -1.0;
        sum += sgn * bin *
               specfun::gauss_2f1(n, 2.0 * n - i - 1.0, 2.0 * n - i, 1.0 - r) / (2.0 * n - i - 1.0);
    }
    return sum;
}

double second_hop_sum(int n, double r) {
    if (n < 1 || !(r > 0.0)) throw DomainError("second_hop_sum: need n >= 1 and r > 0");
    // Alternating form while its terms stay comparable to the result; the
    // equivalent B(N,N) 2F1(N,N;2N;1-r) otherwise.
    double sum = 0.0, mag = 0.0;
    for (int i = 0; i <= n - 1; ++i) {
        const double bin = std::exp(std::lgamma(n + 0.0) - std::lgamma(i + 1.0) - std::lgamma(n - i + 0.0));
        const double sgn = ((n - i - 1) % 2 == 0) ? 1.0 : -1.0;
        const double t =
            bin * specfun::gauss_2f1(n, 2.0 * n - i - 1.0, 2.0 * n - i, 1.0 - r) / (2.0 * n - i - 1.0);
        sum += sgn * t;
        mag += std::abs(t);
    }
    if (mag <= 1e3 * std::abs(sum)) return sum;
    const double beta = std::exp(2.0 * std::lgamma(n + 0.0) - std::lgamma(2.0 * n));
    return beta * specfun::gauss_2f1(n, n, 2.0 * n, 1.0 - r);
}

double outage_high_snr(Scheme scheme, const SystemParams& p, HighSnrForm form) {
    validate(p);
    require_scheme(scheme, p);
    if (scheme != Scheme::NoiseLimited) require_interference(p);
    if (degenerate_theta(p)) return 1.0;
    const Derived q = derive(p);
    const double n = q.n;
    double v = 0.0;
    if (scheme == Scheme::NoiseLimited) {
        v = form == HighSnrForm::NlIncomplete ? high_snr_nl_incomplete(p, q) : high_snr_nl(p, q);
        return std::clamp(v, 0.0, 1.0);
    }
    const double s = second_hop_sum(q.n, r_ratio(p));
    const double hop2 = std::pow(q.d2 / (p.eta * p.theta), n) * s / (std::tgamma(n + 1.0) * std::tgamma(n));
    const double u = q.d1 * p.gamma_th / p.rho1;
    const ArrayGains ag = array_gain_terms(p);
    switch (scheme) {
        case Scheme::MrcMrt:
            v = std::pow(u, n) * (ag.mrc / std::pow(1.0 - p.theta, n) + hop2);
            break;
        case Scheme::ZfMrt:
            v = ag.zf * std::pow(u / (1.0 - p.theta), n - 1.0);
            if (form == HighSnrForm::ZfTwoTerm) v += std::pow(u, n) * hop2;
            break;
        case Scheme::MmseMrt:
            v = std::pow(u, n) * (ag.mmse / std::pow(1.0 - p.theta, n) + hop2);
            break;
        default:
            break;
    }
    return std::clamp(v, 0.0, 1.0);
}

double outage_high_snr_mrc_single_antenna(const SystemParams& p) {
    validate(p);
    require_interference(p);
    if (degenerate_theta(p)) return 1.0;
    const double d1 = p.d1_tau(), d2 = p.d2_tau(), di = p.di_tau();
    const double bracket = 1.0 / (1.0 - p.theta) + p.rho_i / di +
                           d2 * (std::log(p.rho1 / d1) - std::log(p.rho_i / di)) / (p.eta * p.theta);
    return std::clamp(bracket * d1 * p.gamma_th / p.rho1, 0.0, 1.0);
}

double cdf_gamma_i1(Scheme scheme, double x, const SystemParams& p) {
    validate(p);
    require_scheme(scheme, p);
    if (!(x >= 0.0)) throw DomainError("cdf_gamma_i1: x must be nonnegative");
    if (x == 0.0) return 0.0;
    if (p.theta >= 1.0) return 1.0;
    const Derived q = derive(p);
    const int n = q.n;
    const double a = x / q.lam1;
    const double rx = q.lami / q.lam1 * x;
    if (scheme == Scheme::NoiseLimited || p.rho_i == 0.0) return gamma_p(n, a);
    switch (scheme) {
        case Scheme::MrcMrt: {
            double ccdf = 0.0;
            const double la = std::log(a);
            const double l1 = std::log1p(rx);
            for (int m = 0; m <= n - 1; ++m)
                for (int k = 0; k <= m; ++k)
                    ccdf += std::exp(-a + m * la + k * std::log(q.lami) - std::lgamma(m - k + 1.0) -
                                     (k + 1) * l1);
            return std::clamp(1.0 - ccdf, 0.0, 1.0);
        }
        case Scheme::ZfMrt:
            return gamma_p(n - 1, a);
        case Scheme::MmseMrt: {
            const double extra = std::exp(-a + n * std::log(a) - std::lgamma(n + 0.0)) * q.lami / (1.0 + rx);
            return std::clamp(gamma_p(n, a) + extra, 0.0, 1.0);
        }
        default:
            return 0.0;
    }
}

double cdf_gamma_i2(double x, const SystemParams& p) {
    validate(p);
    require_distinct(p);
    if (!(x >= 0.0)) throw DomainError("cdf_gamma_i2: x must be nonnegative");
    if (x == 0.0) return 0.0;
    if (degenerate_theta(p)) return 1.0;
    return cdf_i2_impl(x, derive(p));
}

double pdf_z(double x, const SystemParams& p) {
    validate(p);
    require_distinct(p);
    if (!(x >= 0.0)) throw DomainError("pdf_z: x must be nonnegative");
    return pdf_z_impl(x, derive(p));
}

double pdf_z_convolution(double x, const SystemParams& p) {
    validate(p);
    require_interference(p);
    if (!(x >= 0.0)) throw DomainError("pdf_z_convolution: x must be nonnegative");
    if (x == 0.0) return 0.0;
    return pdf_z_stable(x, derive(p));
}

double mean_log_z(const SystemParams& p) {
    validate(p);
    require_distinct(p);
    return mean_log_z_impl(derive(p));
}

ArrayGains array_gain_terms(const SystemParams& p) {
    validate(p);
    const int n = p.n_antennas;
    const double li = (1.0 - p.theta) * p.rho_i / p.di_tau();
    ArrayGains g;
    for (int k = 0; k <= n; ++k) g.mrc += std::pow(li, k) / std::tgamma(n - k + 1.0);
    g.zf = 1.0 / std::tgamma(n + 0.0);
    g.mmse = 1.0 / std::tgamma(n + 1.0) + li / std::tgamma(n + 0.0);
    return g;
}

double cci_effect_indicator(const SystemParams& p) {
    validate(p);
    require_interference(p);
    const double d1 = p.d1_tau(), d2 = p.d2_tau(), di = p.di_tau();
    const double k = d2 / (p.eta * p.theta);
    const double with_cci = 1.0 / (1.0 - p.theta) + p.rho_i / di +
                            k * (std::log(p.rho1 / d1) - std::log(p.rho_i / di));
    const double without = 1.0 / (1.0 - p.theta) +
                           k * (std::log((1.0 - p.theta) * p.rho1) - std::log(d1 * p.gamma_th) -
                                specfun::euler_gamma);
    return with_cci - without;
}

CapacityTerms capacity_terms(Scheme scheme, const SystemParams& p, const QuadratureSpec& spec) {
    validate(p);
    require_scheme(scheme, p);
    if (scheme != Scheme::NoiseLimited) require_distinct(p);
    CapacityTerms t;
    if (degenerate_theta(p)) return t;
    const Derived q = derive(p);
    const int n = q.n;
    const QuadratureSpec rel = relative_only(spec);

    if (scheme == Scheme::NoiseLimited) {
        const double kappa = p.eta * p.theta * p.rho1 / (q.d1 * q.d2);
        t.c_hop1 = erlang_capacity(n, q.lam1);
        t.eln_hop1 = std::log(q.lam1) + specfun::digamma(n);
        // Product of two Gamma(N,1): density 2 u^(N-1) K0(2 sqrt u) / Gamma(N)^2.
        const double lg = 2.0 * std::lgamma(n + 0.0);
        auto f = [&](double u) {
            return std::log1p(kappa * u) *
                   std::exp(std::log(2.0) + (n - 1) * std::log(u) - lg +
                            specfun::log_bessel_k_int(0, 2.0 * std::sqrt(u)));
        };
        t.c_hop2 = integrate_log_axis(f, 0.0, rel) / (2.0 * kLn2);
        t.eln_hop2 = std::log(kappa) + 2.0 * specfun::digamma(n);
    } else {
        switch (scheme) {
            case Scheme::MrcMrt: {
                const double r = q.lami / q.lam1;
                double c = 0.0;
                for (int m = 0; m <= n - 1; ++m) {
                    for (int k = 0; k <= m; ++k) {
                        auto f = [&](double x) {
                            return std::exp(-x / q.lam1 + m * std::log(x / q.lam1) +
                                            k * std::log(q.lami) - std::lgamma(m - k + 1.0) -
                                            std::log1p(x) - (k + 1) * std::log1p(r * x));
                        };
                        c += integrate_log_axis(f, 0.0, rel);
                    }
                }
                t.c_hop1 = c / (2.0 * kLn2);
                const double z = 1.0 / q.lami;
                double psi_sum = 0.0;
                for (int m = 1; m <= n - 1; ++m)
                    for (int k = 0; k <= m; ++k)
                        psi_sum += std::pow(q.lami, k - m) / std::tgamma(m - k + 1.0) * std::tgamma(m + 0.0) *
                                   specfun::kummer_u(m, m - k, z);
                const double meijer = specfun::upper_inc_gamma_da_scaled(1.0, z) - std::log(z);
                t.eln_hop1 = std::log(q.lam1) + specfun::digamma(1.0) - meijer + psi_sum;
                break;
            }
            case Scheme::ZfMrt:
                t.c_hop1 = erlang_capacity(n - 1, q.lam1);
                t.eln_hop1 = std::log(q.lam1) + specfun::digamma(n - 1.0);
                break;
            case Scheme::MmseMrt: {
                const double lg = std::lgamma(n + 0.0);
                auto fc = [&](double u) {
                    return std::exp(-u + n * std::log(u) - lg - std::log1p(q.lami * u) - std::log1p(q.lam1 * u));
                };
                auto fe = [&](double u) {
                    return std::exp(-u + (n - 1) * std::log(u) - lg - std::log1p(q.lami * u));
                };
                t.c_hop1 = erlang_capacity(n, q.lam1) -
                           q.lami * q.lam1 * integrate_log_axis(fc, 0.0, rel) / (2.0 * kLn2);
                t.eln_hop1 = std::log(q.lam1) + specfun::digamma(n) - q.lami * integrate_log_axis(fe, 0.0, rel);
                break;
            }
            default:
                break;
        }
        t.c_hop2 = second_hop_capacity(q, spec);
        t.eln_hop2 = std::log(p.eta * p.theta / q.d2) + specfun::digamma(n) + mean_log_z_impl(q);
    }
    t.bound = std::max(0.0, t.c_hop1 + t.c_hop2 -
                                0.5 * std::log2(1.0 + std::exp(t.eln_hop1) + std::exp(t.eln_hop2)));
    return t;
}

double capacity_upper_bound(Scheme scheme, const SystemParams& p, const QuadratureSpec& spec) {
    return capacity_terms(scheme, p, spec).bound;
}

}  // namespace relaylab::analysis
