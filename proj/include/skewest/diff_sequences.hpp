// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <utility>
#include <vector>

#include <Eigen/Core>

#include "skewest/clock_model.hpp"

namespace skewest {

/// GE1: differences of real simulated timestamps (correlated noise).
/// GE2: fictitious regeneration with fresh i.i.d. noise (comparison only).
enum class DiffSource { GE1, GE2 };

/// Gap-alpha difference sequences d_r[j] = t_r[alpha+j] - t_r[j],
/// j = 0..N-alpha-1.
struct DiffSet {
    int alpha = 1;
    std::vector<double> d1, d2, d3, d4;
    DiffSource source = DiffSource::GE1;

    int n_pairs() const { return static_cast<int>(d1.size()); }
};

/// Subtracts rounds alpha apart. Requires 1 <= alpha <= N-1.
DiffSet build_diffs(const TimestampSet& ts, int alpha);

/// Fictitious regeneration: keeps the deterministic steps d1 = alpha*H and
/// d4 = alpha*G but replaces the difference noise with freshly drawn i.i.d.
/// Gaussians of variance 2*sigma^2 (drawn W[0], V[0], W[1], V[1], ...):
///
///   d2[j] = skew*(alpha*H + W[j]),  d3[j] = skew*(alpha*G - V[j])
///
/// This does not correspond to any realizable exchange; it serves as the
/// independence baseline the variance bound is checked against.
DiffSet build_diffs_ge2(const ClockParams& params, const SchedulePlan& plan,
                        int alpha, RngStream stream);

/// Covariance of the difference-noise terms (X[alpha+m]-X[m]) and
/// (X[alpha+n]-X[n]), 1-based m, n: 2*sigma^2 on the diagonal, -sigma^2
/// where |m-n| == alpha, 0 otherwise.
double noise_cov(int alpha, int m, int n, double sigma);

/// Full (N-alpha) x (N-alpha) difference-noise covariance matrix, assembled
/// entrywise from noise_cov. Symmetric positive semidefinite.
Eigen::MatrixXd covariance_matrix(int alpha, int n_rounds, double sigma);

/// All index pairs (m, n) with 1 <= n < m <= N-alpha and m - n == alpha:
/// exactly the coordinates where the difference noise is cross-correlated.
struct CorrelationReport {
    int n_rounds = 0;
    int alpha = 0;
    std::vector<std::pair<int, int>> pairs;  ///< (m, n), 1-based, m > n
    bool correlation_free = false;           ///< true iff pairs is empty
};

CorrelationReport correlated_pairs(int n_rounds, int alpha);

/// Closed integer interval of gaps.
struct GapRange {
    int lo = 0;
    int hi = 0;

    bool contains(int alpha) const { return alpha >= lo && alpha <= hi; }
    int size() const { return hi - lo + 1; }
};

/// Gaps whose difference noise is correlation-free: {ceil(N/2), ..., N-1},
/// equivalently alpha > (N-1)/2. For odd N the lower end is (N+1)/2; the
/// rounded-down N/2 admits the pair (alpha+1, 1) and is excluded.
GapRange valid_gap_range(int n_rounds);

}  // namespace skewest
