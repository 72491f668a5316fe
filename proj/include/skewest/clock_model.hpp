// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "skewest/rng.hpp"

namespace skewest {

/// Ground-truth clock and channel parameters of the child node relative to
/// the parent. All times are dimensionless reals; the estimator is scale
/// invariant, so no unit is enforced.
struct ClockParams {
    double offset = 0.0;       ///< additive clock offset (CLI: --beta0)
    double skew = 1.0;         ///< multiplicative rate ratio, > 0 (CLI: --beta1)
    double fixed_delay = 0.0;  ///< deterministic one-way delay, >= 0 (CLI: --d)
    double sigma = 0.0;        ///< std dev of the variable delay, >= 0

    void validate() const;  // throws ConfigError
};

/// Deterministic parent-side schedule: send times advance on an H-step grid,
/// receive times on a G-step grid. With h_step == g_step every receive time
/// trails the same round's send time by exactly t4_offset.
struct SchedulePlan {
    int n_rounds = 2;        ///< number of message exchanges, >= 2
    double h_step = 10.0;    ///< send-grid increment H, > 0
    double g_step = 10.0;    ///< receive-grid increment G, > 0
    double t1_origin = 0.0;  ///< first send time
    double t4_offset = 1.0;  ///< gap between first receive and first send, > 0

    void validate() const;  // throws ConfigError
};

/// One simulated run: parent-clock timestamps (t1 send, t4 receive) and
/// child-clock timestamps (t2 receive, t3 send), one entry per round.
struct TimestampSet {
    std::vector<double> t1, t2, t3, t4;

    /// Rounds where the child send time landed before the same round's
    /// receive time (t3 < t2). Gaussian delays are unbounded, so this can
    /// happen; samples are never rejected or truncated, only counted.
    int acausal_count = 0;

    int n_rounds() const { return static_cast<int>(t1.size()); }
};

/// Simulates n_rounds two-way message exchanges:
///
///   t1[i] = t1_origin + i*H                    (parent send)
///   t4[i] = t1_origin + t4_offset + i*G        (parent receive)
///   t2[i] = skew*(t1[i] + d + X[i]) + offset   (child receive)
///   t3[i] = skew*(t4[i] - d - Y[i]) + offset   (child send)
///
/// with X, Y i.i.d. zero-mean Gaussians of std dev sigma, drawn in the
/// order X[0], Y[0], X[1], Y[1], ... from the given stream. Two calls with
/// equal arguments produce bit-identical results.
TimestampSet generate_timestamps(const ClockParams& params,
                                 const SchedulePlan& plan,
                                 RngStream stream);

}  // namespace skewest
