// SPDX-License-Identifier: Apache-2.0

#include "skewest/rng.hpp"

#include <cmath>

namespace skewest {

std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t stream_key(std::initializer_list<std::uint64_t> parts) {
    std::uint64_t h = 0x243f6a8885a308d3ULL;  // arbitrary nonzero start
    for (std::uint64_t p : parts) {
        h = mix64(h ^ mix64(p));
    }
    return h;
}

Rng::Rng(RngStream stream)
    : engine_(mix64(mix64(stream.seed) ^ mix64(stream.stream_id))) {}

double Rng::uniform01() {
    // Top 53 bits, then map to (0, 1]: zero is excluded so log() below is safe.
    const std::uint64_t x = engine_();
    return static_cast<double>((x >> 11) + 1) * 0x1.0p-53;
}

double Rng::gaussian() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    const double u = uniform01();
    const double v = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u));
    const double theta = 6.283185307179586476925286766559 * v;
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
}

}  // namespace skewest
