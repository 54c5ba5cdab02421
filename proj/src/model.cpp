// SPDX-License-Identifier: Apache-2.0
#include "relaylab/model.hpp"

#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <numbers>
#include <string>

#include "relaylab/errors.hpp"

namespace relaylab {

double SystemParams::d1_tau() const { return std::pow(d1, tau); }
double SystemParams::d2_tau() const { return std::pow(d2, tau); }
double SystemParams::di_tau() const { return std::pow(d_i, tau); }

namespace {
void require(bool ok, const char* field, const char* rule) {
    if (!ok) throw DomainError(std::string("invalid parameter ") + field + ": " + rule);
}
}  // namespace

void validate(const SystemParams& p) {
    require(p.n_antennas >= 1, "n_antennas", "must be >= 1");
    require(p.eta > 0.0 && p.eta <= 1.0, "eta", "must lie in (0, 1]");
    require(p.theta >= 0.0 && p.theta <= 1.0, "theta", "must lie in [0, 1]");
    require(p.rho1 > 0.0 && std::isfinite(p.rho1), "rho1", "must be positive");
    require(p.rho_i >= 0.0 && std::isfinite(p.rho_i), "rho_i", "must be nonnegative");
    require(p.d1 > 0.0 && std::isfinite(p.d1), "d1", "must be positive");
    require(p.d2 > 0.0 && std::isfinite(p.d2), "d2", "must be positive");
    require(p.d_i > 0.0 && std::isfinite(p.d_i), "d_i", "must be positive");
    require(p.tau >= 0.0 && std::isfinite(p.tau), "tau", "must be nonnegative");
    require(p.gamma_th > 0.0 && std::isfinite(p.gamma_th), "gamma_th", "must be positive");
}

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

namespace {
std::mt19937_64 make_engine(RngStream s) {
    std::seed_seq seq{static_cast<std::uint32_t>(s.seed), static_cast<std::uint32_t>(s.seed >> 32),
                      static_cast<std::uint32_t>(s.stream_id),
                      static_cast<std::uint32_t>(s.stream_id >> 32), 0x5eed5eedu};
    return std::mt19937_64(seq);
}
}  // namespace

Rng::Rng(RngStream stream) : stream_(stream), engine_(make_engine(stream)) {}

double Rng::uniform() { return (static_cast<double>(engine_() >> 11) + 1.0) * 0x1.0p-53; }

std::complex<double> Rng::complex_normal() {
    const double r = std::sqrt(-std::log(uniform()));
    const double phase = 2.0 * std::numbers::pi * uniform();
    return {r * std::cos(phase), r * std::sin(phase)};
}

void draw_channels(const SystemParams& p, Rng& rng, ChannelDraw& out) {
    const auto n = static_cast<std::size_t>(p.n_antennas);
    out.h1.resize(n);
    out.h2.resize(n);
    out.h_i.resize(n);
    for (auto& v : out.h1) v = rng.complex_normal();
    for (auto& v : out.h2) v = rng.complex_normal();
    for (auto& v : out.h_i) v = rng.complex_normal();
}

ChannelDraw draw_channels(const SystemParams& p, Rng& rng) {
    ChannelDraw d;
    draw_channels(p, rng, d);
    return d;
}

double gamma_cdf(int n, double x) {
    if (n < 1) throw DomainError("gamma_cdf: shape must be >= 1");
    if (!(x >= 0.0)) throw DomainError("gamma_cdf: x must be nonnegative");
    if (x == 0.0) return 0.0;
    return boost::math::gamma_p(static_cast<double>(n), x);
}

}  // namespace relaylab
