// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string_view>

#include "relaylab/model.hpp"

namespace relaylab {

enum class Scheme { NoiseLimited, MrcMrt, ZfMrt, MmseMrt };

inline constexpr Scheme kAllSchemes[] = {Scheme::NoiseLimited, Scheme::MrcMrt, Scheme::ZfMrt,
                                         Scheme::MmseMrt};

std::string_view scheme_name(Scheme s);           // "nl", "mrc", "zf", "mmse"
std::optional<Scheme> parse_scheme(std::string_view name);

struct SinrDecomposition {
    double gamma1 = 0.0;
    double gamma2 = 0.0;
    double gamma_e2e = 0.0;
    // ZF evaluated with rho_i = 0 falls back to MRC.
    bool zf_fallback = false;
};

// Sufficient statistics of a draw: every scheme's SINR depends on these alone.
struct DrawStats {
    double h1_sq = 0.0;
    double h2_sq = 0.0;
    double hi_sq = 0.0;
    double cross_sq = 0.0;  // |h1^H h_i|^2
};

DrawStats draw_stats(const ChannelDraw& d);

double end_to_end(double gamma1, double gamma2);

double harvested_relay_power(const ChannelDraw& d, const SystemParams& p, bool with_cci);
double harvested_relay_power(const DrawStats& s, const SystemParams& p, bool with_cci);

SinrDecomposition sinr_noise_limited(const ChannelDraw& d, const SystemParams& p);
SinrDecomposition sinr_mrc_mrt(const ChannelDraw& d, const SystemParams& p);
SinrDecomposition sinr_zf_mrt(const ChannelDraw& d, const SystemParams& p);
SinrDecomposition sinr_mmse_mrt(const ChannelDraw& d, const SystemParams& p);
SinrDecomposition sinr(Scheme s, const ChannelDraw& d, const SystemParams& p);

// Fast path used by the Monte Carlo engine. Does not validate p.
SinrDecomposition sinr(Scheme s, const DrawStats& st, const SystemParams& p);

// Explicit relay processing, W = omega * h2^H w1 / ||h2||. Test path only.
struct RelayWeights {
    CVector w1;  // entries of the 1xN combining row vector
    double omega_sq = 0.0;
};

RelayWeights relay_weights(Scheme s, const ChannelDraw& d, const SystemParams& p);

}  // namespace relaylab
