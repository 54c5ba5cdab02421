// SPDX-License-Identifier: Apache-2.0
#include "relaylab/optimum.hpp"

#include <algorithm>
#include <cmath>

#include "relaylab/analysis.hpp"
#include "relaylab/errors.hpp"
#include "relaylab/specfun.hpp"

namespace relaylab::optimum {
namespace {

constexpr int kBracketGrid = 4000;

double r_ratio(const SystemParams& p) { return p.d1_tau() * p.rho_i / (p.di_tau() * p.rho1); }

// Signed terms of the condition, summed by theta_condition.
void terms(const ThetaPolynomial& q, double t, double out[4]) {
    const double n = q.n;
    const double u = 1.0 - t;
    std::fill(out, out + 4, 0.0);
    switch (q.scheme) {
        case Scheme::NoiseLimited:
            out[0] = q.a1 * std::pow(t, n + 1);
            out[1] = -q.b1 * std::pow(u, n + 1);
            out[2] = -q.c1 * t * std::pow(u, n);
            out[3] = -q.d1 * std::pow(u, n + 1) * std::log(u);
            break;
        case Scheme::MrcMrt: {
            double s = 0.0;
            for (std::size_t k = 0; k < q.a_n.size(); ++k)
                s += q.a_n[k] * std::pow(u, static_cast<double>(k) - n - 1.0);
            out[0] = s;
            out[1] = -q.b / std::pow(t, n + 1);
            break;
        }
        case Scheme::ZfMrt:
            out[0] = q.a_n[0] * std::pow(u, -n);
            out[1] = -q.b / std::pow(t, n + 1);
            break;
        case Scheme::MmseMrt:
            out[0] = q.a_n[0] * std::pow(u, -n - 1);
            out[1] = q.a_n[1] * std::pow(u, -n);
            out[2] = -q.b / std::pow(t, n + 1);
            break;
    }
}

}  // namespace

ThetaPolynomial theta_polynomial(Scheme s, const SystemParams& p) {
    validate(p);
    if (s == Scheme::ZfMrt && p.n_antennas < 2)
        throw SchemeUnsupported("ZF/MRT requires at least two relay antennas");
    if (s != Scheme::NoiseLimited && !(p.rho_i > 0.0))
        throw DomainError("rho_i must be positive for the interference analysis");
    ThetaPolynomial q;
    q.scheme = s;
    q.n = p.n_antennas;
    const double n = q.n;
    const double d1 = p.d1_tau(), d2 = p.d2_tau(), di = p.di_tau();
    const double hop2 = std::pow(d2 / p.eta, n);
    switch (s) {
        case Scheme::NoiseLimited: {
            const double c = hop2 / std::tgamma(n);
            q.a1 = n;
            q.b1 = c * n *
                   (std::log(p.rho1) - std::log(d1 * p.gamma_th) - specfun::euler_gamma);
            q.c1 = c;
            q.d1 = n * c;
            break;
        }
        case Scheme::MrcMrt: {
            const double g2 = std::tgamma(n) * std::tgamma(n);
            for (int k = 0; k < q.n; ++k)
                q.a_n.push_back(std::pow(p.rho_i / di, k) / std::tgamma(n - k));
            q.b = hop2 * analysis::second_hop_sum(q.n, r_ratio(p)) / g2;
            break;
        }
        case Scheme::ZfMrt: {
            const double g2 = std::tgamma(n) * std::tgamma(n);
            q.a_n.push_back(1.0 / std::tgamma(n - 1.0));
            q.b = hop2 * d1 * p.gamma_th * analysis::second_hop_sum(q.n, r_ratio(p)) / (g2 * p.rho1);
            break;
        }
        case Scheme::MmseMrt: {
            const double g2 = std::tgamma(n) * std::tgamma(n);
            q.a_n.push_back(1.0 / std::tgamma(n));
            q.a_n.push_back((n - 1.0) * (p.rho_i / di) / std::tgamma(n));
            q.b = hop2 * analysis::second_hop_sum(q.n, r_ratio(p)) / g2;
            break;
        }
    }
    return q;
}

double theta_condition(const ThetaPolynomial& q, double theta) {
    double t[4];
    terms(q, theta, t);
    return t[0] + t[1] + t[2] + t[3];
}

double theta_condition_scale(const ThetaPolynomial& q, double theta) {
    double t[4];
    terms(q, theta, t);
    return std::abs(t[0]) + std::abs(t[1]) + std::abs(t[2]) + std::abs(t[3]);
}

ThetaSolution optimal_theta(Scheme s, const SystemParams& p) {
    const ThetaPolynomial q = theta_polynomial(s, p);
    auto f = [&](double t) { return theta_condition(q, t); };

    double lo = kThetaLo, flo = f(lo);
    double hi = 0.0, fhi = 0.0;
    bool found = false;
    for (int i = 1; i <= kBracketGrid; ++i) {
        const double t = kThetaLo + (kThetaHi - kThetaLo) * i / kBracketGrid;
        const double ft = f(t);
        if (ft == 0.0) return {t, 0.0, 0.0};
        if (std::signbit(ft) != std::signbit(flo)) {
            hi = t;
            fhi = ft;
            found = true;
            break;
        }
        lo = t;
        flo = ft;
    }
    if (!found) throw BracketFailure("optimal_theta: no sign change of the first-order condition on (0,1)");

    while (hi - lo > 1e-9) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if (fm == 0.0) {
            lo = hi = mid;
            break;
        }
        if (std::signbit(fm) == std::signbit(flo)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
            fhi = fm;
        }
    }
    const double width = hi - lo;
    // Secant polish inside the bracket.
    double x = lo == hi ? lo : lo - flo * (hi - lo) / (fhi - flo);
    for (int it = 0; it < 20 && lo < hi; ++it) {
        const double fx = f(x);
        if (fx == 0.0) break;
        if (std::signbit(fx) == std::signbit(flo)) {
            lo = x;
            flo = fx;
        } else {
            hi = x;
            fhi = fx;
        }
        const double next = lo - flo * (hi - lo) / (fhi - flo);
        if (!(next > lo && next < hi) || std::abs(next - x) < 1e-16) break;
        x = next;
    }
    ThetaSolution out;
    out.theta_star = x;
    out.residual = std::abs(f(x)) / theta_condition_scale(q, x);
    out.bracket = width;
    return out;
}

double theta_closed_form_mrc(const SystemParams& p) {
    validate(p);
    if (p.n_antennas != 1) throw DomainError("n_antennas: the closed form covers a single antenna");
    if (!(p.rho_i > 0.0)) throw DomainError("rho_i must be positive for the interference analysis");
    const double d1 = p.d1_tau(), d2 = p.d2_tau(), di = p.di_tau();
    const double num = d2 * di * p.rho1 *
                       (std::log(p.rho_i) - std::log(p.rho1) - std::log(di) + std::log(d1));
    const double den = p.eta * (d1 * p.rho_i - di * p.rho1);
    // Equal per-hop powers: the ratio tends to d2/eta.
    const double x = den == 0.0 ? d2 / p.eta : num / den;
    return std::sqrt(x) / (1.0 + std::sqrt(x));
}

namespace {

ThetaScan scan(Scheme s, const SystemParams& p, int grid_points, std::int64_t samples,
               std::uint64_t seed, const mc::McConfig& cfg, bool capacity) {
    if (grid_points < 11) throw DomainError("grid_points must be >= 11");
    ThetaScan out;
    std::vector<mc::McCase> cases;
    for (int i = 0; i < grid_points; ++i) {
        const double t = 0.02 + 0.96 * i / (grid_points - 1);
        out.theta.push_back(t);
        SystemParams q = p;
        q.theta = t;
        cases.push_back({s, q});
    }
    const mc::McJoint res = mc::estimate_joint(cases, samples, seed, cfg);
    out.estimate = capacity ? res.capacity : res.outage;
    double best = out.estimate.front().mean;
    for (const auto& e : out.estimate) best = capacity ? std::max(best, e.mean) : std::min(best, e.mean);
    std::vector<double> tied;
    for (std::size_t i = 0; i < out.estimate.size(); ++i)
        if (out.estimate[i].mean == best) tied.push_back(out.theta[i]);
    out.best_theta = tied[(tied.size() - 1) / 2];
    return out;
}

}  // namespace

ThetaScan mc_theta_scan(Scheme s, const SystemParams& p, int grid_points, std::int64_t samples_per_point,
                        std::uint64_t seed, const mc::McConfig& cfg) {
    return scan(s, p, grid_points, samples_per_point, seed, cfg, false);
}

ThetaScan mc_capacity_theta_scan(Scheme s, const SystemParams& p, int grid_points,
                                 std::int64_t samples_per_point, std::uint64_t seed,
                                 const mc::McConfig& cfg) {
    return scan(s, p, grid_points, samples_per_point, seed, cfg, true);
}

}  // namespace relaylab::optimum
