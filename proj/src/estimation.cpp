// SPDX-License-Identifier: Apache-2.0

#include "skewest/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "skewest/bounds.hpp"
#include "skewest/errors.hpp"

namespace skewest {

SkewEstimate estimate_skew(const DiffSet& diffs) {
    const int m = diffs.n_pairs();
    if (m < 1) {
        throw RangeError("difference set is empty");
    }

    double num = 0.0;
    double den = 0.0;
    for (int j = 0; j < m; ++j) {
        num += diffs.d2[j] * diffs.d2[j] + diffs.d3[j] * diffs.d3[j];
        den += diffs.d1[j] * diffs.d2[j] + diffs.d4[j] * diffs.d3[j];
    }
    // All-zero input makes both sums vanish; the relative test alone would
    // pass 0/0, so the absolute check comes first.
    if (den == 0.0 || std::abs(den) < 1e-30 * std::abs(num)) {
        throw DegenerateInputError(
            "regression denominator vanished (sum d1*d2 + d4*d3 = " +
            std::to_string(den) + ")");
    }

    SkewEstimate est;
    est.skew = num / den;
    est.reciprocal = den / num;
    est.alpha = diffs.alpha;
    est.n_pairs = m;
    est.correlation_free =
        valid_gap_range(diffs.alpha + m).contains(diffs.alpha);
    return est;
}

SkewEstimate estimate_skew_classic(const TimestampSet& ts) {
    const int n = ts.n_rounds();
    if (n < 2) {
        throw RangeError("need at least 2 rounds, got " + std::to_string(n));
    }
    return estimate_skew(build_diffs(ts, n - 1));
}

double optimal_gap_real(int n_rounds, double skew, double sigma, double h_step,
                        double g_step) {
    if (n_rounds < 2) {
        throw RangeError("need at least 2 rounds, got " +
                         std::to_string(n_rounds));
    }
    if (skew <= 0.0) {
        throw DomainError("skew must be > 0, got " + std::to_string(skew));
    }
    if (h_step <= 0.0 || g_step <= 0.0) {
        throw DomainError("schedule steps must be > 0");
    }
    const double n = static_cast<double>(n_rounds);
    const double s2 = skew * skew;
    const double disc =
        n * n / 9.0 -
        2.0 * s2 * sigma * sigma / (s2 * h_step * h_step + g_step * g_step);
    if (disc < 0.0) {
        throw DomainError(
            "no real optimum: sigma = " + std::to_string(sigma) +
            " is too large for this schedule (negative discriminant)");
    }
    return n / 3.0 + std::sqrt(disc);
}

int optimal_gap(int n_rounds, double skew, double sigma, double h_step,
                double g_step) {
    const double real_opt =
        optimal_gap_real(n_rounds, skew, sigma, h_step, g_step);
    const GapRange range = valid_gap_range(n_rounds);

    const double clamped = std::clamp(
        real_opt, static_cast<double>(range.lo), static_cast<double>(range.hi));
    const int lo = std::clamp(static_cast<int>(std::floor(clamped)), range.lo,
                              range.hi);
    const int hi =
        std::clamp(static_cast<int>(std::ceil(clamped)), range.lo, range.hi);
    if (lo == hi) {
        return lo;
    }
    const double bound_lo =
        crb_skew(n_rounds, lo, skew, sigma, h_step, g_step).crb_beta1;
    const double bound_hi =
        crb_skew(n_rounds, hi, skew, sigma, h_step, g_step).crb_beta1;
    return bound_hi < bound_lo ? hi : lo;
}

}  // namespace skewest
