// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "skewest/diff_sequences.hpp"

namespace skewest {

/// Skew estimate from one set of difference sequences.
struct SkewEstimate {
    double skew = 0.0;        ///< estimated rate ratio (beta1_hat)
    double reciprocal = 0.0;  ///< 1/skew (theta1_hat), the regression solution
    int alpha = 0;
    int n_pairs = 0;
    bool correlation_free = false;  ///< gap inside valid_gap_range
};

/// Least-squares-through-origin skew estimate
///
///   skew = sum(d2^2 + d3^2) / sum(d1*d2 + d4*d3)
///
/// This coincides with the ML estimate only when the gap is correlation-free;
/// outside that range the value is still computed but flagged, since the
/// independence assumption behind the derivation is violated.
SkewEstimate estimate_skew(const DiffSet& diffs);

/// Classic first/last-round estimator: the gap fixed at N-1, using one
/// difference pair per sequence.
SkewEstimate estimate_skew_classic(const TimestampSet& ts);

/// Real-valued MSE-optimal gap
///
///   N/3 + sqrt(N^2/9 - 2*skew^2*sigma^2 / (skew^2*H^2 + G^2))
///
/// Throws DomainError when the discriminant is negative (sigma too large
/// for the given schedule).
double optimal_gap_real(int n_rounds, double skew, double sigma,
                        double h_step, double g_step);

/// Integer optimal gap: clamps the real optimum into the correlation-free
/// range, then picks floor vs ceil by comparing the variance bound. Ties
/// break toward the smaller gap.
int optimal_gap(int n_rounds, double skew, double sigma, double h_step,
                double g_step);

}  // namespace skewest
