// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

namespace skewest {

/// One point of the performance-bound curve.
struct BoundPoint {
    int n_rounds = 0;
    int alpha = 0;
    double crb_beta1 = 0.0;  ///< lower bound on var/MSE of the skew estimate
};

/// Cramer-Rao bound for the skew estimate under independent difference
/// noise. The estimator solves the reciprocal-skew regression
///
///   d1[j] = theta*d2[j] - W[j],   d4[j] = theta*d3[j] + V[j]
///
/// with W, V ~ N(0, 2*sigma^2). With the deterministic steps d1 = alpha*H,
/// d4 = alpha*G the Fisher information for theta is
/// (N-alpha)*skew^2*alpha^2*(H^2+G^2) / (2*sigma^2); mapping back through
/// var(skew_hat) ~= skew^4 * var(theta_hat) gives
///
///   crb_beta1 = 2*skew^2*sigma^2 / ((N-alpha) * alpha^2 * (H^2 + G^2))
///
/// The GE2 Monte-Carlo model attains this bound at every gap; the real
/// timestamp model attains it only on the correlation-free gap range.
BoundPoint crb_skew(int n_rounds, int alpha, double skew, double sigma,
                    double h_step, double g_step);

/// Tabulates crb_skew pointwise; output order follows the input gaps.
std::vector<BoundPoint> crb_curve(int n_rounds, double skew, double sigma,
                                  double h_step, double g_step,
                                  const std::vector<int>& alphas);

}  // namespace skewest
