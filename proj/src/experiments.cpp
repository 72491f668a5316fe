// SPDX-License-Identifier: Apache-2.0

#include "skewest/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <mutex>
#include <string>
#include <thread>

#include "skewest/bounds.hpp"
#include "skewest/diff_sequences.hpp"
#include "skewest/errors.hpp"
#include "skewest/estimation.hpp"

namespace skewest {

namespace {

// Substream tags. Each consumer of the shared seed gets its own tag so the
// variates of one experiment kind never alias another's.
constexpr std::uint64_t kTagGe1 = 1;
constexpr std::uint64_t kTagGe2 = 2;
constexpr std::uint64_t kTagNoiseProbe = 3;

std::uint64_t mode_tag(Mode mode) {
    return mode == Mode::GE1 ? kTagGe1 : kTagGe2;
}

MseRow run_cell(const ExperimentConfig& cfg, Mode mode, int alpha) {
    const int n = cfg.plan.n_rounds;
    const int trials = cfg.n_trials;
    const double true_skew = cfg.params.skew;

    double sum_q = 0.0;
    double sum_q2 = 0.0;
    double sum_skew = 0.0;
    int failures = 0;
    for (int t = 0; t < trials; ++t) {
        const RngStream stream{
            cfg.seed,
            stream_key({mode_tag(mode), static_cast<std::uint64_t>(n),
                        static_cast<std::uint64_t>(alpha),
                        static_cast<std::uint64_t>(t)})};
        SkewEstimate est;
        try {
            if (mode == Mode::GE1) {
                est = estimate_skew(build_diffs(
                    generate_timestamps(cfg.params, cfg.plan, stream), alpha));
            } else {
                est = estimate_skew(
                    build_diffs_ge2(cfg.params, cfg.plan, alpha, stream));
            }
        } catch (const DegenerateInputError&) {
            // A vanishing denominator spoils the trial, not the sweep; the
            // cell is flagged through n_failures instead.
            ++failures;
            continue;
        }
        const double err = est.skew - true_skew;
        const double q = err * err;
        sum_q += q;
        sum_q2 += q * q;
        sum_skew += est.skew;
    }

    MseRow row;
    row.mode = mode;
    row.n_rounds = n;
    row.alpha = alpha;
    row.n_trials = trials;
    row.n_failures = failures;
    row.correlation_free = valid_gap_range(n).contains(alpha);
    row.crb_beta1 = crb_skew(n, alpha, true_skew, cfg.params.sigma,
                             cfg.plan.h_step, cfg.plan.g_step)
                        .crb_beta1;
    const int used = trials - failures;
    const double nan = std::numeric_limits<double>::quiet_NaN();
    if (used == 0) {
        row.mse = nan;
        row.mean_skew = nan;
        row.ci_half_width = nan;
        return row;
    }
    row.mse = sum_q / used;
    row.mean_skew = sum_skew / used;
    if (used < 2) {
        row.ci_half_width = nan;
        return row;
    }
    const double var_q =
        std::max(0.0, (sum_q2 - used * row.mse * row.mse) / (used - 1));
    row.ci_half_width = 1.96 * std::sqrt(var_q / used);
    return row;
}

}  // namespace

std::string to_string(Mode mode) {
    return mode == Mode::GE1 ? "GE1" : "GE2";
}

void ExperimentConfig::validate() const {
    params.validate();
    plan.validate();
    if (modes.empty()) {
        throw ConfigError("at least one mode is required");
    }
    if (n_trials < 2) {
        throw ConfigError("n_trials must be >= 2, got " +
                          std::to_string(n_trials));
    }
    if (alphas.empty()) {
        throw RangeError("at least one gap is required");
    }
    for (int alpha : alphas) {
        if (alpha < 1 || alpha > plan.n_rounds - 1) {
            throw RangeError("gap alpha must be in [1, " +
                             std::to_string(plan.n_rounds - 1) + "], got " +
                             std::to_string(alpha));
        }
    }
}

MseReport run_mse(const ExperimentConfig& config, int n_threads) {
    config.validate();
    if (n_threads < 1) {
        throw ConfigError("n_threads must be >= 1, got " +
                          std::to_string(n_threads));
    }

    // Canonical cell order: sorted unique (mode, alpha). The report then
    // depends only on the set of requested cells, not their listing order.
    std::vector<Mode> modes = config.modes;
    std::sort(modes.begin(), modes.end());
    modes.erase(std::unique(modes.begin(), modes.end()), modes.end());
    std::vector<int> alphas = config.alphas;
    std::sort(alphas.begin(), alphas.end());
    alphas.erase(std::unique(alphas.begin(), alphas.end()), alphas.end());

    struct Cell {
        Mode mode;
        int alpha;
    };
    std::vector<Cell> cells;
    cells.reserve(modes.size() * alphas.size());
    for (Mode mode : modes) {
        for (int alpha : alphas) {
            cells.push_back({mode, alpha});
        }
    }

    MseReport report;
    report.config = config;
    report.rows.resize(cells.size());

    // Cells are independent; trials within a cell stay sequential, so the
    // numbers (and the serialized report) do not depend on n_threads.
    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= cells.size()) {
                return;
            }
            try {
                report.rows[i] = run_cell(config, cells[i].mode,
                                          cells[i].alpha);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) {
                    first_error = std::current_exception();
                }
                next.store(cells.size());
                return;
            }
        }
    };

    const int thread_count = static_cast<int>(std::min<std::size_t>(
        static_cast<std::size_t>(n_threads), cells.size()));
    if (thread_count <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(thread_count);
        for (int i = 0; i < thread_count; ++i) {
            pool.emplace_back(worker);
        }
        for (auto& th : pool) {
            th.join();
        }
    }
    if (first_error) {
        std::rethrow_exception(first_error);
    }
    return report;
}

OptimalAlphaResult find_empirical_optimal_alpha(const ExperimentConfig& config,
                                                int n_threads) {
    ExperimentConfig cfg = config;
    cfg.modes = {Mode::GE1};
    cfg.validate();
    const GapRange range = valid_gap_range(cfg.plan.n_rounds);
    for (int alpha : cfg.alphas) {
        if (!range.contains(alpha)) {
            throw RangeError("gap " + std::to_string(alpha) +
                             " is outside the correlation-free range [" +
                             std::to_string(range.lo) + ", " +
                             std::to_string(range.hi) + "]");
        }
    }

    const MseReport report = run_mse(cfg, n_threads);
    OptimalAlphaResult best;
    bool found = false;
    for (const MseRow& row : report.rows) {
        if (std::isnan(row.mse)) {
            continue;  // cell with no usable trial
        }
        if (!found || row.mse < best.mse) {
            best.alpha = row.alpha;
            best.mse = row.mse;
            found = true;
        }
    }
    if (!found) {
        throw DegenerateInputError("every swept cell failed to estimate");
    }
    return best;
}

EmpiricalCovariance empirical_noise_cov(const ClockParams& params,
                                        const SchedulePlan& plan, int alpha,
                                        int n_trials, std::uint64_t seed) {
    params.validate();
    plan.validate();
    const int n = plan.n_rounds;
    if (alpha < 1 || alpha > n - 1) {
        throw RangeError("gap alpha must be in [1, " + std::to_string(n - 1) +
                         "], got " + std::to_string(alpha));
    }
    if (n_trials < 1000) {
        throw ConfigError("n_trials must be >= 1000 for a usable covariance, "
                          "got " + std::to_string(n_trials));
    }

    const int m = n - alpha;
    Eigen::VectorXd sum_w = Eigen::VectorXd::Zero(m);
    Eigen::MatrixXd sum_ww = Eigen::MatrixXd::Zero(m, m);
    Eigen::VectorXd w(m);
    std::vector<double> x(n);

    for (int t = 0; t < n_trials; ++t) {
        const RngStream stream{
            seed, stream_key({kTagNoiseProbe, static_cast<std::uint64_t>(n),
                              static_cast<std::uint64_t>(alpha),
                              static_cast<std::uint64_t>(t)})};
        const TimestampSet ts = generate_timestamps(params, plan, stream);
        // Invert the child-clock map to recover the forward delay noise.
        for (int i = 0; i < n; ++i) {
            x[i] = (ts.t2[i] - params.offset) / params.skew - ts.t1[i] -
                   params.fixed_delay;
        }
        for (int j = 0; j < m; ++j) {
            w(j) = x[alpha + j] - x[j];
        }
        sum_w += w;
        sum_ww += w * w.transpose();
    }

    EmpiricalCovariance out;
    out.n_trials = n_trials;
    const double trials = static_cast<double>(n_trials);
    const Eigen::VectorXd mean = sum_w / trials;
    out.cov = (sum_ww - trials * mean * mean.transpose()) / (trials - 1.0);
    // Asymptotic SE of a Gaussian sample covariance:
    // var(c_ij) = (c_ii*c_jj + c_ij^2) / (T - 1).
    out.se.resize(m, m);
    for (int r = 0; r < m; ++r) {
        for (int c = 0; c < m; ++c) {
            const double v = out.cov(r, r) * out.cov(c, c) +
                             out.cov(r, c) * out.cov(r, c);
            out.se(r, c) = std::sqrt(std::max(0.0, v) / (trials - 1.0));
        }
    }
    return out;
}

}  // namespace skewest
