// SPDX-License-Identifier: Apache-2.0
#include "relaylab/schemes.hpp"

#include <cmath>
#include <complex>

#include "relaylab/errors.hpp"

namespace relaylab {

std::string_view scheme_name(Scheme s) {
    switch (s) {
        case Scheme::NoiseLimited: return "nl";
        case Scheme::MrcMrt: return "mrc";
        case Scheme::ZfMrt: return "zf";
        case Scheme::MmseMrt: return "mmse";
    }
    return "?";
}

std::optional<Scheme> parse_scheme(std::string_view name) {
    for (Scheme s : kAllSchemes)
        if (scheme_name(s) == name) return s;
    return std::nullopt;
}

namespace {
double norm_sq(const CVector& v) {
    double acc = 0.0;
    for (const auto& x : v) acc += std::norm(x);
    return acc;
}

std::complex<double> inner(const CVector& a, const CVector& b) {  // a^H b
    std::complex<double> acc{};
    for (std::size_t k = 0; k < a.size(); ++k) acc += std::conj(a[k]) * b[k];
    return acc;
}
}  // namespace

DrawStats draw_stats(const ChannelDraw& d) {
    return {norm_sq(d.h1), norm_sq(d.h2), norm_sq(d.h_i), std::norm(inner(d.h1, d.h_i))};
}

double end_to_end(double g1, double g2) {
    const double den = g1 + g2 + 1.0;
    return g1 * g2 / den;
}

double harvested_relay_power(const DrawStats& s, const SystemParams& p, bool with_cci) {
    double in = p.rho1 * s.h1_sq / p.d1_tau();
    if (with_cci) in += p.rho_i * s.hi_sq / p.di_tau();
    return p.eta * p.theta * in;
}

double harvested_relay_power(const ChannelDraw& d, const SystemParams& p, bool with_cci) {
    validate(p);
    return harvested_relay_power(draw_stats(d), p, with_cci);
}

SinrDecomposition sinr(Scheme scheme, const DrawStats& s, const SystemParams& p) {
    const double d1 = p.d1_tau();
    const double di = p.di_tau();
    const double lam1 = (1.0 - p.theta) * p.rho1 / d1;
    const double lami = (1.0 - p.theta) * p.rho_i / di;
    SinrDecomposition out;
    const bool cci = scheme != Scheme::NoiseLimited;
    out.gamma2 = harvested_relay_power(s, p, cci) * s.h2_sq / p.d2_tau();
    switch (scheme) {
        case Scheme::NoiseLimited:
            out.gamma1 = lam1 * s.h1_sq;
            break;
        case Scheme::MrcMrt:
            out.gamma1 = s.h1_sq > 0.0 ? lam1 * s.h1_sq / (lami * s.cross_sq / s.h1_sq + 1.0) : 0.0;
            break;
        case Scheme::ZfMrt:
            if (p.rho_i == 0.0) {
                out.gamma1 = s.h1_sq > 0.0 ? lam1 * s.h1_sq / (lami * s.cross_sq / s.h1_sq + 1.0) : 0.0;
                out.zf_fallback = true;
            } else {
                const double proj = s.hi_sq > 0.0 ? s.h1_sq - s.cross_sq / s.hi_sq : s.h1_sq;
                out.gamma1 = lam1 * std::abs(proj);
            }
            break;
        case Scheme::MmseMrt:
            // lam1 * h1^H (I + lami h_i h_i^H)^{-1} h1 via Sherman-Morrison.
            out.gamma1 = lam1 * (s.h1_sq - lami * s.cross_sq / (1.0 + lami * s.hi_sq));
            if (out.gamma1 < 0.0) out.gamma1 = 0.0;
            break;
    }
    out.gamma_e2e = end_to_end(out.gamma1, out.gamma2);
    return out;
}

namespace {
SinrDecomposition checked(Scheme s, const ChannelDraw& d, const SystemParams& p) {
    validate(p);
    if (s == Scheme::ZfMrt && p.n_antennas < 2)
        throw SchemeUnsupported("ZF/MRT requires at least two relay antennas");
    return sinr(s, draw_stats(d), p);
}
}  // namespace

SinrDecomposition sinr_noise_limited(const ChannelDraw& d, const SystemParams& p) {
    return checked(Scheme::NoiseLimited, d, p);
}
SinrDecomposition sinr_mrc_mrt(const ChannelDraw& d, const SystemParams& p) {
    return checked(Scheme::MrcMrt, d, p);
}
SinrDecomposition sinr_zf_mrt(const ChannelDraw& d, const SystemParams& p) {
    return checked(Scheme::ZfMrt, d, p);
}
SinrDecomposition sinr_mmse_mrt(const ChannelDraw& d, const SystemParams& p) {
    return checked(Scheme::MmseMrt, d, p);
}
SinrDecomposition sinr(Scheme s, const ChannelDraw& d, const SystemParams& p) {
    return checked(s, d, p);
}

RelayWeights relay_weights(Scheme s, const ChannelDraw& d, const SystemParams& p) {
    validate(p);
    if (s == Scheme::ZfMrt && p.n_antennas < 2)
        throw SchemeUnsupported("ZF/MRT requires at least two relay antennas");
    const std::size_t n = d.h1.size();
    const double lam1 = (1.0 - p.theta) * p.rho1 / p.d1_tau();
    const double lami = (1.0 - p.theta) * p.rho_i / p.di_tau();
    const double hi_sq = norm_sq(d.h_i);
    const std::complex<double> c = inner(d.h_i, d.h1);  // h_i^H h1

    // Column form v of the combiner, w1 = v^H.
    CVector v(n);
    const bool zf_active = s == Scheme::ZfMrt && p.rho_i > 0.0;
    if (zf_active) {
        for (std::size_t k = 0; k < n; ++k) v[k] = d.h1[k] - d.h_i[k] * c / hi_sq;
    } else if (s == Scheme::MmseMrt && p.rho_i > 0.0) {
        const double sigma = p.di_tau() / ((1.0 - p.theta) * p.rho_i);
        for (std::size_t k = 0; k < n; ++k) v[k] = (d.h1[k] - d.h_i[k] * c / (sigma + hi_sq)) / sigma;
    } else {
        v = d.h1;
    }
    const double vn = std::sqrt(norm_sq(v));
    RelayWeights out;
    out.w1.resize(n);
    for (std::size_t k = 0; k < n; ++k) out.w1[k] = std::conj(v[k]) / vn;

    // E|w1 y_r|^2 over signal, interference and noise.
    const bool cci = s != Scheme::NoiseLimited;
    const double sig = std::norm(inner(v, d.h1)) / (vn * vn);
    const double intf = cci ? std::norm(inner(v, d.h_i)) / (vn * vn) : 0.0;
    const double power_in = lam1 * sig + lami * intf + 1.0;
    out.omega_sq = harvested_relay_power(draw_stats(d), p, cci) / power_in;
    return out;
}

}  // namespace relaylab
