// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <vector>

namespace relaylab {

// Normalized linear parameters (noise power = 1).
struct SystemParams {
    int n_antennas = 1;
    double eta = 0.8;
    double theta = 0.5;
    double rho1 = 100.0;
    double rho_i = 8.912509381337456;  // 9.5 dB
    double d1 = 1.0;
    double d2 = 1.0;
    double d_i = 1.0;
    double tau = 2.0;
    double gamma_th = 1.0;

    double d1_tau() const;
    double d2_tau() const;
    double di_tau() const;
};

// Throws DomainError naming the offending field.
void validate(const SystemParams& p);

double db_to_linear(double db);

struct RngStream {
    std::uint64_t seed = 0;
    std::uint64_t stream_id = 0;
};

// mt19937_64 keyed by (seed, stream_id) through seed_seq; complex normals by Box-Muller.
class Rng {
public:
    explicit Rng(RngStream stream);
    double uniform();  // (0, 1]
    std::complex<double> complex_normal();  // CN(0,1)
    RngStream stream() const { return stream_; }

private:
    RngStream stream_;
    std::mt19937_64 engine_;
};

using CVector = std::vector<std::complex<double>>;

struct ChannelDraw {
    CVector h1;
    CVector h2;
    CVector h_i;
};

ChannelDraw draw_channels(const SystemParams& p, Rng& rng);
void draw_channels(const SystemParams& p, Rng& rng, ChannelDraw& out);

// P(||h||^2 < x) for an n-vector of CN(0,1) entries.
double gamma_cdf(int n, double x);

}  // namespace relaylab
