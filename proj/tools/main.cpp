// SPDX-License-Identifier: Apache-2.0
//
// skewest command-line front end.
//
// Exit codes: 0 success, 2 usage or invalid configuration, 3 malformed
// input file, 4 out-of-range argument, 5 mathematically degenerate input,
// 1 anything unexpected.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "skewest/bounds.hpp"
#include "skewest/clock_model.hpp"
#include "skewest/diff_sequences.hpp"
#include "skewest/errors.hpp"
#include "skewest/estimation.hpp"
#include "skewest/experiments.hpp"
#include "skewest/io.hpp"
#include "skewest/version.hpp"

namespace {

using namespace skewest;

// "3,6,11" and "10..19" forms, mixable: "1..4,7".
std::vector<int> parse_alphas(const std::string& text) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string token;
    while (std::getline(ss, token, ',')) {
        if (token.empty()) {
            throw RangeError("empty gap token in '" + text + "'");
        }
        const std::size_t dots = token.find("..");
        try {
            if (dots == std::string::npos) {
                out.push_back(std::stoi(token));
            } else {
                const int lo = std::stoi(token.substr(0, dots));
                const int hi = std::stoi(token.substr(dots + 2));
                if (hi < lo) {
                    throw RangeError("empty gap range '" + token + "'");
                }
                for (int a = lo; a <= hi; ++a) {
                    out.push_back(a);
                }
            }
        } catch (const std::invalid_argument&) {
            throw RangeError("bad gap token '" + token + "'");
        } catch (const std::out_of_range&) {
            throw RangeError("bad gap token '" + token + "'");
        }
    }
    if (out.empty()) {
        throw RangeError("no gaps given");
    }
    return out;
}

std::vector<Mode> parse_modes(const std::string& text) {
    std::vector<Mode> out;
    std::stringstream ss(text);
    std::string token;
    while (std::getline(ss, token, ',')) {
        if (token == "GE1" || token == "ge1") {
            out.push_back(Mode::GE1);
        } else if (token == "GE2" || token == "ge2") {
            out.push_back(Mode::GE2);
        } else {
            throw ConfigError("unknown mode '" + token +
                              "' (expected GE1 or GE2)");
        }
    }
    if (out.empty()) {
        throw ConfigError("no modes given");
    }
    return out;
}

// Sink that is std::cout by default or a file when --output is set.
class OutputTarget {
public:
    explicit OutputTarget(const std::string& path) {
        if (!path.empty() && path != "-") {
            file_ = std::make_unique<std::ofstream>(path);
            if (!*file_) {
                throw ConfigError("cannot open output file '" + path + "'");
            }
        }
    }

    std::ostream& stream() { return file_ ? *file_ : std::cout; }

private:
    std::unique_ptr<std::ofstream> file_;
};

TimestampSet load_timestamps(const std::string& path) {
    if (path == "-") {
        return read_timestamps_csv(std::cin);
    }
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open input file '" + path + "'");
    }
    return read_timestamps_csv(in);
}

struct CommonOpts {
    ClockParams params;
    SchedulePlan plan;
    double snr_db = 0.0;
    bool snr_set = false;

    void finalize() {
        if (snr_set) {
            params.sigma = std::pow(10.0, -snr_db / 20.0);
        }
    }
};

// Installs the flags shared by every data-generating subcommand. The SNR
// shorthand maps to sigma = 10^(-snr/20) and excludes --sigma. Help is long
// form only: -h would shadow the --h schedule step.
void add_model_options(CLI::App* cmd, CommonOpts& opts) {
    cmd->set_help_flag("--help", "Print this help message and exit");
    cmd->add_option("--beta0", opts.params.offset, "Clock offset")
        ->capture_default_str();
    cmd->add_option("--beta1", opts.params.skew, "Clock skew (rate ratio)")
        ->capture_default_str();
    cmd->add_option("--d", opts.params.fixed_delay, "Fixed one-way delay")
        ->capture_default_str();
    auto* sigma = cmd->add_option("--sigma", opts.params.sigma,
                                  "Std dev of the variable delay")
                      ->capture_default_str();
    cmd->add_option_function<double>(
           "--snr-db",
           [&opts](const double& v) {
               opts.snr_db = v;
               opts.snr_set = true;
           },
           "Noise level as -20*log10(sigma), overrides --sigma")
        ->excludes(sigma);
    cmd->add_option("--n", opts.plan.n_rounds, "Number of exchange rounds")
        ->capture_default_str();
    cmd->add_option("--h", opts.plan.h_step, "Send-grid step H")
        ->capture_default_str();
    cmd->add_option("--g", opts.plan.g_step, "Receive-grid step G")
        ->capture_default_str();
    cmd->add_option("--t1-origin", opts.plan.t1_origin, "First send time")
        ->capture_default_str();
    cmd->add_option("--t4-offset", opts.plan.t4_offset,
                    "First receive time minus first send time")
        ->capture_default_str();
}

int run(int argc, char** argv) {
    CLI::App app{"Clock-skew estimation from two-way message exchanges"};
    app.set_help_flag("--help", "Print this help message and exit");
    app.set_version_flag("--version", std::string("skewest ") + kVersion);
    app.require_subcommand(1);

    CommonOpts opts;
    opts.params.skew = 1.01;
    opts.params.fixed_delay = 1.0;
    opts.params.sigma = 0.1;
    opts.plan.n_rounds = 20;
    opts.plan.t4_offset = 3.0;

    std::uint64_t seed = 1;
    std::string output_path;
    std::string alphas_text;
    std::string modes_text = "GE1,GE2";
    int alpha = 0;
    int trials = 20000;
    int threads = 1;
    bool as_json = false;

    auto* gen = app.add_subcommand(
        "gen", "Simulate two-way exchanges and write a timestamp CSV");
    add_model_options(gen, opts);
    gen->add_option("--seed", seed, "RNG seed")->capture_default_str();
    gen->add_option("-o,--output", output_path, "Output file (default stdout)");

    auto* estimate = app.add_subcommand(
        "estimate", "Estimate the skew from a timestamp CSV");
    estimate->set_help_flag("--help", "Print this help message and exit");
    std::string input_path = "-";
    estimate
        ->add_option("input", input_path,
                     "Timestamp CSV file, '-' for stdin")
        ->capture_default_str();
    estimate->add_option("--alpha", alpha, "Subtraction gap")->required();
    estimate->add_flag("--json", as_json, "Emit JSON instead of CSV");
    estimate->add_option("-o,--output", output_path,
                         "Output file (default stdout)");

    auto* sweep = app.add_subcommand(
        "sweep", "Monte-Carlo MSE sweep over subtraction gaps");
    add_model_options(sweep, opts);
    sweep->add_option("--alphas", alphas_text,
                      "Gaps, e.g. '1..19' or '3,6,11' (default 1..N-1)");
    sweep->add_option("--modes", modes_text, "GE1, GE2, or GE1,GE2")
        ->capture_default_str();
    sweep->add_option("--trials", trials, "Trials per (mode, gap) cell")
        ->capture_default_str();
    sweep->add_option("--seed", seed, "RNG seed")->capture_default_str();
    sweep->add_option("--threads", threads, "Worker threads")
        ->capture_default_str();
    sweep->add_flag("--json", as_json, "Emit JSON instead of CSV");
    sweep->add_option("-o,--output", output_path,
                      "Output file (default stdout)");

    auto* bound = app.add_subcommand(
        "bound", "Tabulate the skew variance bound over gaps");
    add_model_options(bound, opts);
    bound->add_option("--alphas", alphas_text,
                      "Gaps, e.g. '1..19' (default 1..N-1)");
    bound->add_option("-o,--output", output_path,
                      "Output file (default stdout)");

    auto* alpha_opt = app.add_subcommand(
        "alpha-opt", "MSE-optimal subtraction gap (closed form)");
    add_model_options(alpha_opt, opts);
    bool empirical = false;
    alpha_opt->add_flag("--empirical", empirical,
                        "Also locate the empirical MSE argmin");
    alpha_opt->add_option("--alphas", alphas_text,
                          "Gaps searched with --empirical (default the "
                          "correlation-free range)");
    alpha_opt->add_option("--trials", trials, "Trials per gap with --empirical")
        ->capture_default_str();
    alpha_opt->add_option("--seed", seed, "RNG seed")->capture_default_str();
    alpha_opt->add_option("--threads", threads, "Worker threads")
        ->capture_default_str();

    auto* cov = app.add_subcommand(
        "cov", "Difference-noise covariance structure for one gap");
    add_model_options(cov, opts);
    cov->add_option("--alpha", alpha, "Subtraction gap")->required();
    bool pairs_only = false;
    bool cov_empirical = false;
    cov->add_flag("--pairs", pairs_only,
                  "List correlated index pairs instead of the matrix");
    cov->add_flag("--empirical", cov_empirical,
                  "Monte-Carlo sample covariance instead of the closed form");
    cov->add_option("--trials", trials, "Trials with --empirical")
        ->capture_default_str();
    cov->add_option("--seed", seed, "RNG seed")->capture_default_str();
    cov->add_option("-o,--output", output_path,
                    "Output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }
    opts.finalize();

    if (gen->parsed()) {
        const TimestampSet ts =
            generate_timestamps(opts.params, opts.plan, RngStream{seed, 0});
        OutputTarget out(output_path);
        write_timestamps_csv(out.stream(), ts, opts.params, opts.plan, seed);
        return 0;
    }

    if (estimate->parsed()) {
        const TimestampSet ts = load_timestamps(input_path);
        const SkewEstimate est = estimate_skew(build_diffs(ts, alpha));
        if (!est.correlation_free) {
            const GapRange range = valid_gap_range(ts.n_rounds());
            std::cerr << "warning: gap " << alpha
                      << " is below the correlation-free range ["
                      << range.lo << ", " << range.hi
                      << "]; the difference noise is correlated and the "
                         "estimate is not the exact MLE\n";
        }
        OutputTarget out(output_path);
        if (as_json) {
            out.stream() << estimate_json(est);
        } else {
            out.stream() << "# input=" << input_path << " alpha=" << alpha
                         << "\n";
            write_estimate_csv(out.stream(), est);
        }
        return 0;
    }

    if (sweep->parsed()) {
        ExperimentConfig cfg;
        cfg.params = opts.params;
        cfg.plan = opts.plan;
        cfg.alphas = alphas_text.empty()
                         ? parse_alphas("1.." +
                                        std::to_string(opts.plan.n_rounds - 1))
                         : parse_alphas(alphas_text);
        cfg.modes = parse_modes(modes_text);
        cfg.n_trials = trials;
        cfg.seed = seed;
        const MseReport report = run_mse(cfg, threads);
        OutputTarget out(output_path);
        if (as_json) {
            out.stream() << mse_json(report);
        } else {
            write_mse_csv(out.stream(), report);
        }
        return 0;
    }

    if (bound->parsed()) {
        const std::vector<int> alphas =
            alphas_text.empty()
                ? parse_alphas("1.." + std::to_string(opts.plan.n_rounds - 1))
                : parse_alphas(alphas_text);
        const auto curve =
            crb_curve(opts.plan.n_rounds, opts.params.skew, opts.params.sigma,
                      opts.plan.h_step, opts.plan.g_step, alphas);
        OutputTarget out(output_path);
        write_bounds_csv(out.stream(), curve, opts.params.skew,
                         opts.params.sigma, opts.plan.h_step, opts.plan.g_step);
        return 0;
    }

    if (alpha_opt->parsed()) {
        const double real = optimal_gap_real(opts.plan.n_rounds,
                                             opts.params.skew,
                                             opts.params.sigma,
                                             opts.plan.h_step,
                                             opts.plan.g_step);
        const int integer = optimal_gap(opts.plan.n_rounds, opts.params.skew,
                                        opts.params.sigma, opts.plan.h_step,
                                        opts.plan.g_step);
        const double crb_at_opt =
            crb_skew(opts.plan.n_rounds, integer, opts.params.skew,
                     opts.params.sigma, opts.plan.h_step, opts.plan.g_step)
                .crb_beta1;
        std::cout << "alpha_real=" << format_double(real) << "\n";
        std::cout << "alpha_opt=" << integer << "\n";
        std::cout << "crb_at_opt=" << format_double(crb_at_opt) << "\n";
        if (empirical) {
            ExperimentConfig cfg;
            cfg.params = opts.params;
            cfg.plan = opts.plan;
            const GapRange range = valid_gap_range(opts.plan.n_rounds);
            cfg.alphas = alphas_text.empty()
                             ? parse_alphas(std::to_string(range.lo) + ".." +
                                            std::to_string(range.hi))
                             : parse_alphas(alphas_text);
            cfg.n_trials = trials;
            cfg.seed = seed;
            const OptimalAlphaResult res =
                find_empirical_optimal_alpha(cfg, threads);
            std::cout << "alpha_empirical=" << res.alpha << "\n";
            std::cout << "mse_empirical=" << format_double(res.mse) << "\n";
        }
        return 0;
    }

    if (cov->parsed()) {
        OutputTarget out(output_path);
        if (pairs_only) {
            write_correlation_report(
                out.stream(),
                correlated_pairs(opts.plan.n_rounds, alpha));
        } else if (cov_empirical) {
            const EmpiricalCovariance emp = empirical_noise_cov(
                opts.params, opts.plan, alpha, trials, seed);
            out.stream() << "# skewest v" << kVersion
                         << " empirical-covariance n_rounds="
                         << opts.plan.n_rounds << " alpha=" << alpha
                         << " sigma=" << format_double(opts.params.sigma)
                         << " trials=" << trials << " seed=" << seed << "\n";
            write_matrix(out.stream(), emp.cov);
        } else {
            out.stream() << "# skewest v" << kVersion
                         << " covariance n_rounds=" << opts.plan.n_rounds
                         << " alpha=" << alpha
                         << " sigma=" << format_double(opts.params.sigma)
                         << "\n";
            write_matrix(out.stream(),
                         covariance_matrix(alpha, opts.plan.n_rounds,
                                           opts.params.sigma));
        }
        return 0;
    }

    return 2;  // unreachable; require_subcommand guards this
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const RangeError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 5;
    } catch (const DegenerateInputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 5;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "unexpected error: " << e.what() << "\n";
        return 1;
    }
}
