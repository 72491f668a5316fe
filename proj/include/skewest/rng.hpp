// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace skewest {

/// Identifies one reproducible random stream. Equal (seed, stream_id)
/// pairs yield the same variate sequence on every run.
struct RngStream {
    std::uint64_t seed = 0;
    std::uint64_t stream_id = 0;
};

/// SplitMix64 finalizer, used for stream-key derivation.
std::uint64_t mix64(std::uint64_t x);

/// Folds a list of integers into one substream id. The Monte-Carlo harness
/// keys every trial as stream_key({mode, n_rounds, alpha, trial}), which
/// makes cells and trials independent of execution order.
std::uint64_t stream_key(std::initializer_list<std::uint64_t> parts);

/// Deterministic Gaussian/uniform source over a 64-bit Mersenne Twister.
/// The distribution transforms are done by hand (Box-Muller) because the
/// standard-library distributions are implementation-defined and would
/// break replay across toolchains.
class Rng {
public:
    explicit Rng(RngStream stream);

    /// Uniform double in (0, 1], 53-bit resolution.
    double uniform01();

    /// Standard normal variate.
    double gaussian();

    /// Normal variate with standard deviation sigma.
    double gaussian(double sigma) { return sigma * gaussian(); }

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace skewest
