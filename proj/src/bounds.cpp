// SPDX-License-Identifier: Apache-2.0

#include "skewest/bounds.hpp"

#include <string>

#include "skewest/errors.hpp"

namespace skewest {

BoundPoint crb_skew(int n_rounds, int alpha, double skew, double sigma,
                    double h_step, double g_step) {
    if (alpha < 1 || alpha > n_rounds - 1) {
        throw RangeError("gap alpha must be in [1, " +
                         std::to_string(n_rounds - 1) + "], got " +
                         std::to_string(alpha));
    }
    if (skew <= 0.0) {
        throw DomainError("skew must be > 0, got " + std::to_string(skew));
    }
    if (sigma < 0.0) {
        throw DomainError("sigma must be >= 0, got " + std::to_string(sigma));
    }
    if (h_step <= 0.0 || g_step <= 0.0) {
        throw DomainError("schedule steps must be > 0");
    }

    BoundPoint pt;
    pt.n_rounds = n_rounds;
    pt.alpha = alpha;
    if (sigma == 0.0) {
        pt.crb_beta1 = 0.0;  // noiseless estimation is exact
        return pt;
    }
    const double m = static_cast<double>(n_rounds - alpha);
    const double a = static_cast<double>(alpha);
    pt.crb_beta1 = 2.0 * skew * skew * sigma * sigma /
                   (m * a * a * (h_step * h_step + g_step * g_step));
    return pt;
}

std::vector<BoundPoint> crb_curve(int n_rounds, double skew, double sigma,
                                  double h_step, double g_step,
                                  const std::vector<int>& alphas) {
    std::vector<BoundPoint> curve;
    curve.reserve(alphas.size());
    for (int alpha : alphas) {
        curve.push_back(crb_skew(n_rounds, alpha, skew, sigma, h_step, g_step));
    }
    return curve;
}

}  // namespace skewest
