// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "skewest/clock_model.hpp"
#include "skewest/rng.hpp"

namespace skewest {

/// Data-generation mode for Monte-Carlo runs.
///
/// GE1 builds difference sequences from full two-way timestamp exchanges,
/// so gaps below the correlation-free threshold carry correlated noise.
/// GE2 draws the difference noise terms independently; it matches the
/// idealized model the variance bound is derived from and is useful for
/// validating that bound at every gap.
enum class Mode { GE1, GE2 };

std::string to_string(Mode mode);

/// Monte-Carlo experiment configuration.
struct ExperimentConfig {
    ClockParams params;
    SchedulePlan plan;
    std::vector<int> alphas;
    std::vector<Mode> modes = {Mode::GE1, Mode::GE2};
    int n_trials = 20000;
    std::uint64_t seed = 0;

    /// Throws ConfigError / RangeError on invalid settings. Gaps must lie
    /// in [1, N-1]; they need not be correlation-free.
    void validate() const;
};

/// One (mode, alpha) cell of an MSE sweep.
///
/// n_trials is the attempted count; trials whose estimate degenerates are
/// skipped and tallied in n_failures, and the moments average the rest.
/// A cell with no usable trial reports NaN moments rather than silence.
struct MseRow {
    Mode mode = Mode::GE1;
    int n_rounds = 0;
    int alpha = 0;
    int n_trials = 0;
    int n_failures = 0;
    double mse = 0.0;            ///< mean of (skew_hat - skew)^2
    double mean_skew = 0.0;
    double ci_half_width = 0.0;  ///< 1.96 * SE of the MSE estimate
    bool correlation_free = false;
    double crb_beta1 = 0.0;      ///< variance bound at this gap
};

struct MseReport {
    ExperimentConfig config;
    std::vector<MseRow> rows;  ///< sorted by (mode, alpha), unique
};

/// Runs the Monte-Carlo sweep. Trials within a cell are sequential and
/// seeded by (mode, N, alpha, trial), so the report is byte-identical for
/// any n_threads; threads only spread cells across cores.
MseReport run_mse(const ExperimentConfig& config, int n_threads = 1);

struct OptimalAlphaResult {
    int alpha = 0;
    double mse = 0.0;
};

/// Argmin of the empirical GE1 MSE over config.alphas. All gaps must be
/// correlation-free, otherwise the comparison mixes estimator regimes.
OptimalAlphaResult find_empirical_optimal_alpha(const ExperimentConfig& config,
                                                int n_threads = 1);

/// Sample covariance of the recovered one-way noise, for checking the
/// difference-noise covariance structure against its closed form.
struct EmpiricalCovariance {
    Eigen::MatrixXd cov;  ///< (N-alpha) x (N-alpha) sample covariance
    Eigen::MatrixXd se;   ///< elementwise standard errors
    int n_trials = 0;
};

/// Estimates cov(W_m, W_n) of the forward difference noise by regenerating
/// timestamps n_trials times and inverting the clock map. Requires
/// n_trials >= 1000 so the standard errors are meaningful.
EmpiricalCovariance empirical_noise_cov(const ClockParams& params,
                                        const SchedulePlan& plan, int alpha,
                                        int n_trials, std::uint64_t seed);

}  // namespace skewest
