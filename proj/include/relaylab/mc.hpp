// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <vector>

#include "relaylab/model.hpp"
#include "relaylab/schemes.hpp"

namespace relaylab::mc {

struct McEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    std::int64_t n_samples = 0;
    std::uint64_t seed = 0;
    Scheme scheme = Scheme::NoiseLimited;
};

// Draws are generated in fixed chunks, chunk k from RNG stream k, so the
// estimate does not depend on the worker count.
struct McConfig {
    int workers = 0;  // 0: hardware concurrency
    std::int64_t chunk = 65536;
};

inline constexpr std::int64_t kMinSamples = 1000;

McEstimate estimate_outage(Scheme s, const SystemParams& p, std::int64_t n_samples, std::uint64_t seed,
                           const McConfig& cfg = {});
McEstimate estimate_capacity(Scheme s, const SystemParams& p, std::int64_t n_samples,
                             std::uint64_t seed, const McConfig& cfg = {});

// Several (scheme, params) cases on one shared draw stream. All cases must
// have the same antenna count.
struct McCase {
    Scheme scheme = Scheme::NoiseLimited;
    SystemParams params;
};

struct McJoint {
    std::vector<McEstimate> outage;
    std::vector<McEstimate> capacity;
};

McJoint estimate_joint(const std::vector<McCase>& cases, std::int64_t n_samples, std::uint64_t seed,
                       const McConfig& cfg = {});

}  // namespace relaylab::mc
