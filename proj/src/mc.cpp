// SPDX-License-Identifier: Apache-2.0
#include "relaylab/mc.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <string>
#include <thread>

#include "relaylab/errors.hpp"

namespace relaylab::mc {
namespace {

struct Kahan {
    double sum = 0.0;
    double carry = 0.0;
    void add(double v) {
        const double y = v - carry;
        const double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
};

struct ChunkTally {
    std::int64_t outages = 0;
    Kahan cap;
    Kahan cap_sq;
};

void check_case(const McCase& c, int n_antennas) {
    validate(c.params);
    if (c.params.n_antennas != n_antennas)
        throw DomainError("estimate_joint: all cases must share n_antennas");
    if (c.scheme == Scheme::ZfMrt && c.params.n_antennas < 2)
        throw SchemeUnsupported("ZF/MRT requires at least two relay antennas");
}

int resolve_workers(int requested, std::int64_t chunks) {
    int w = requested > 0 ? requested : static_cast<int>(std::thread::hardware_concurrency());
    w = std::max(w, 1);
    return static_cast<int>(std::min<std::int64_t>(w, chunks));
}

}  // namespace

McJoint estimate_joint(const std::vector<McCase>& cases, std::int64_t n_samples, std::uint64_t seed,
                       const McConfig& cfg) {
    if (cases.empty()) throw DomainError("estimate_joint: no cases");
    if (n_samples < kMinSamples) throw DomainError("n_samples must be >= 1000");
    if (cfg.chunk < 1) throw DomainError("chunk must be positive");
    const int n_ant = cases.front().params.n_antennas;
    for (const auto& c : cases) check_case(c, n_ant);

    const std::int64_t n_chunks = (n_samples + cfg.chunk - 1) / cfg.chunk;
    const std::size_t n_cases = cases.size();
    std::vector<ChunkTally> tallies(static_cast<std::size_t>(n_chunks) * n_cases);
    std::atomic<std::int64_t> next{0};

    auto worker = [&]() {
        SystemParams shape;
        shape.n_antennas = n_ant;
        ChannelDraw draw;
        for (;;) {
            const std::int64_t k = next.fetch_add(1);
            if (k >= n_chunks) return;
            Rng rng({seed, static_cast<std::uint64_t>(k)});
            const std::int64_t begin = k * cfg.chunk;
            const std::int64_t count = std::min(cfg.chunk, n_samples - begin);
            ChunkTally* row = &tallies[static_cast<std::size_t>(k) * n_cases];
            for (std::int64_t i = 0; i < count; ++i) {
                draw_channels(shape, rng, draw);
                const DrawStats st = draw_stats(draw);
                for (std::size_t c = 0; c < n_cases; ++c) {
                    const double g = sinr(cases[c].scheme, st, cases[c].params).gamma_e2e;
                    if (g < cases[c].params.gamma_th) ++row[c].outages;
                    const double cap = 0.5 * std::log2(1.0 + g);
                    row[c].cap.add(cap);
                    row[c].cap_sq.add(cap * cap);
                }
            }
        }
    };

    const int workers = resolve_workers(cfg.workers, n_chunks);
    if (workers == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    // Reduce in chunk order.
    McJoint out;
    const double n = static_cast<double>(n_samples);
    for (std::size_t c = 0; c < n_cases; ++c) {
        std::int64_t hits = 0;
        Kahan s, s2;
        for (std::int64_t k = 0; k < n_chunks; ++k) {
            const ChunkTally& t = tallies[static_cast<std::size_t>(k) * n_cases + c];
            hits += t.outages;
            s.add(t.cap.sum);
            s2.add(t.cap_sq.sum);
        }
        McEstimate o{};
        o.mean = static_cast<double>(hits) / n;
        o.std_error = std::sqrt(o.mean * (1.0 - o.mean) / n);
        o.n_samples = n_samples;
        o.seed = seed;
        o.scheme = cases[c].scheme;
        McEstimate cap = o;
        cap.mean = s.sum / n;
        const double var = std::max(0.0, (s2.sum - n * cap.mean * cap.mean) / (n - 1.0));
        cap.std_error = std::sqrt(var / n);
        out.outage.push_back(o);
        out.capacity.push_back(cap);
    }
    return out;
}

McEstimate estimate_outage(Scheme s, const SystemParams& p, std::int64_t n_samples, std::uint64_t seed,
                           const McConfig& cfg) {
    return estimate_joint({{s, p}}, n_samples, seed, cfg).outage.front();
}

McEstimate estimate_capacity(Scheme s, const SystemParams& p, std::int64_t n_samples,
                             std::uint64_t seed, const McConfig& cfg) {
    return estimate_joint({{s, p}}, n_samples, seed, cfg).capacity.front();
}

}  // namespace relaylab::mc
