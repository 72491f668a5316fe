// SPDX-License-Identifier: Apache-2.0

#include "skewest/diff_sequences.hpp"

#include <cstdlib>
#include <string>

#include "skewest/errors.hpp"

namespace skewest {

namespace {

void require_gap(int alpha, int n_rounds) {
    if (alpha < 1 || alpha > n_rounds - 1) {
        throw RangeError("gap alpha must be in [1, " +
                         std::to_string(n_rounds - 1) + "], got " +
                         std::to_string(alpha));
    }
}

}  // namespace

DiffSet build_diffs(const TimestampSet& ts, int alpha) {
    const int n = ts.n_rounds();
    if (n < 2) {
        throw RangeError("need at least 2 rounds to form differences, got " +
                         std::to_string(n));
    }
    require_gap(alpha, n);

    DiffSet ds;
    ds.alpha = alpha;
    ds.source = DiffSource::GE1;
    const int m = n - alpha;
    ds.d1.resize(m);
    ds.d2.resize(m);
    ds.d3.resize(m);
    ds.d4.resize(m);
    for (int j = 0; j < m; ++j) {
        ds.d1[j] = ts.t1[alpha + j] - ts.t1[j];
        ds.d2[j] = ts.t2[alpha + j] - ts.t2[j];
        ds.d3[j] = ts.t3[alpha + j] - ts.t3[j];
        ds.d4[j] = ts.t4[alpha + j] - ts.t4[j];
    }
    return ds;
}

DiffSet build_diffs_ge2(const ClockParams& params, const SchedulePlan& plan,
                        int alpha, RngStream stream) {
    params.validate();
    plan.validate();
    require_gap(alpha, plan.n_rounds);

    DiffSet ds;
    ds.alpha = alpha;
    ds.source = DiffSource::GE2;
    const int m = plan.n_rounds - alpha;
    ds.d1.resize(m);
    ds.d2.resize(m);
    ds.d3.resize(m);
    ds.d4.resize(m);

    // Each difference of two i.i.d. N(0, sigma^2) draws has variance
    // 2*sigma^2; here the differences themselves are drawn fresh.
    const double diff_sigma = params.sigma * 1.4142135623730950488;
    Rng rng(stream);
    for (int j = 0; j < m; ++j) {
        const double w = rng.gaussian(diff_sigma);
        const double v = rng.gaussian(diff_sigma);
        ds.d1[j] = alpha * plan.h_step;
        ds.d4[j] = alpha * plan.g_step;
        ds.d2[j] = params.skew * (alpha * plan.h_step + w);
        ds.d3[j] = params.skew * (alpha * plan.g_step - v);
    }
    return ds;
}

double noise_cov(int alpha, int m, int n, double sigma) {
    if (alpha < 1) {
        throw RangeError("gap alpha must be >= 1, got " + std::to_string(alpha));
    }
    if (m < 1 || n < 1) {
        throw RangeError("covariance indices are 1-based, got m=" +
                         std::to_string(m) + " n=" + std::to_string(n));
    }
    if (m == n) {
        return 2.0 * sigma * sigma;
    }
    if (std::abs(m - n) == alpha) {
        return -sigma * sigma;
    }
    return 0.0;
}

Eigen::MatrixXd covariance_matrix(int alpha, int n_rounds, double sigma) {
    require_gap(alpha, n_rounds);
    const int m = n_rounds - alpha;
    Eigen::MatrixXd cov(m, m);
    for (int r = 0; r < m; ++r) {
        for (int c = 0; c < m; ++c) {
            cov(r, c) = noise_cov(alpha, r + 1, c + 1, sigma);
        }
    }
    return cov;
}

CorrelationReport correlated_pairs(int n_rounds, int alpha) {
    require_gap(alpha, n_rounds);
    CorrelationReport rep;
    rep.n_rounds = n_rounds;
    rep.alpha = alpha;
    const int m = n_rounds - alpha;
    for (int hi = alpha + 1; hi <= m; ++hi) {
        rep.pairs.emplace_back(hi, hi - alpha);
    }
    rep.correlation_free = rep.pairs.empty();
    return rep;
}

GapRange valid_gap_range(int n_rounds) {
    if (n_rounds < 2) {
        throw RangeError("need at least 2 rounds, got " +
                         std::to_string(n_rounds));
    }
    // ceil(N/2) is the least alpha with alpha > (N-1)/2, i.e. the least gap
    // whose difference pairs never share a source sample.
    return GapRange{(n_rounds + 1) / 2, n_rounds - 1};
}

}  // namespace skewest
