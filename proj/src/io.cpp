// SPDX-License-Identifier: Apache-2.0

#include "skewest/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <istream>
#include <ostream>
#include <string>
#include <system_error>

#include <json.hpp>

#include "skewest/errors.hpp"
#include "skewest/version.hpp"

namespace skewest {

namespace {

const char* bool_str(bool b) { return b ? "true" : "false"; }

// Shared `# key=value` parameter block so every artifact records how it was
// produced. Deliberately free of dates and hostnames: equal inputs must
// serialize to equal bytes.
void write_param_header(std::ostream& os, const ClockParams& params,
                        const SchedulePlan& plan) {
    os << "# beta0=" << format_double(params.offset)
       << " beta1=" << format_double(params.skew)
       << " d=" << format_double(params.fixed_delay)
       << " sigma=" << format_double(params.sigma) << "\n";
    os << "# n_rounds=" << plan.n_rounds << " h=" << format_double(plan.h_step)
       << " g=" << format_double(plan.g_step)
       << " t1_origin=" << format_double(plan.t1_origin)
       << " t4_offset=" << format_double(plan.t4_offset) << "\n";
}

nlohmann::json estimate_to_json(const SkewEstimate& est) {
    return nlohmann::json{
        {"alpha", est.alpha},
        {"n_pairs", est.n_pairs},
        {"beta1_hat", est.skew},
        {"theta1_hat", est.reciprocal},
        {"correlation_free", est.correlation_free},
    };
}

[[noreturn]] void fail_line(std::size_t line_no, const std::string& what) {
    throw ParseError("line " + std::to_string(line_no) + ": " + what);
}

double parse_double_field(const std::string& field, std::size_t line_no) {
    double value = 0.0;
    const char* first = field.data();
    const char* last = field.data() + field.size();
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last || field.empty()) {
        fail_line(line_no, "expected a number, got '" + field + "'");
    }
    return value;
}

long parse_int_field(const std::string& field, std::size_t line_no) {
    long value = 0;
    const char* first = field.data();
    const char* last = field.data() + field.size();
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last || field.empty()) {
        fail_line(line_no, "expected an integer, got '" + field + "'");
    }
    return value;
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    for (;;) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string::npos) {
            fields.push_back(line.substr(start));
            return fields;
        }
        fields.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
}

}  // namespace

std::string format_double(double value) {
    char buf[40];
    // %g at low precision switches to scientific form ("1e+01" for 10);
    // integral values read better and round-trip exactly as plain digits.
    if (std::isfinite(value) && value == std::floor(value) &&
        std::fabs(value) < 1e15) {
        std::snprintf(buf, sizeof(buf), "%.0f", value);
        return buf;
    }
    for (int prec = 1; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof(buf), "%.*g", prec, value);
        const double back = std::strtod(buf, nullptr);
        if (back == value) {
            return buf;
        }
    }
    return buf;  // non-finite values fall through; %g spelling is kept
}

void write_timestamps_csv(std::ostream& os, const TimestampSet& ts,
                          const ClockParams& params, const SchedulePlan& plan,
                          std::uint64_t seed) {
    os << "# skewest v" << kVersion << " timestamps\n";
    write_param_header(os, params, plan);
    os << "# seed=" << seed << "\n";
    os << "# acausal_count=" << ts.acausal_count << "\n";
    os << "i,T1,T2,T3,T4\n";
    for (int i = 0; i < ts.n_rounds(); ++i) {
        os << (i + 1) << ',' << format_double(ts.t1[i]) << ','
           << format_double(ts.t2[i]) << ',' << format_double(ts.t3[i]) << ','
           << format_double(ts.t4[i]) << "\n";
    }
}

TimestampSet read_timestamps_csv(std::istream& is) {
    TimestampSet ts;
    std::string line;
    std::size_t line_no = 0;
    bool header_seen = false;
    long rows = 0;

    while (std::getline(is, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty() || line[0] == '#') {
            continue;
        }
        if (!header_seen) {
            if (line != "i,T1,T2,T3,T4") {
                fail_line(line_no,
                          "expected header 'i,T1,T2,T3,T4', got '" + line +
                              "'");
            }
            header_seen = true;
            continue;
        }
        const std::vector<std::string> fields = split_csv(line);
        if (fields.size() != 5) {
            fail_line(line_no, "expected 5 fields, got " +
                                   std::to_string(fields.size()));
        }
        const long index = parse_int_field(fields[0], line_no);
        if (index != rows + 1) {
            throw RangeError("line " + std::to_string(line_no) +
                             ": round index must be " +
                             std::to_string(rows + 1) + ", got " +
                             std::to_string(index));
        }
        const double t1 = parse_double_field(fields[1], line_no);
        const double t2 = parse_double_field(fields[2], line_no);
        const double t3 = parse_double_field(fields[3], line_no);
        const double t4 = parse_double_field(fields[4], line_no);
        if (rows > 0 && t1 <= ts.t1.back()) {
            fail_line(line_no, "T1 must be strictly increasing");
        }
        if (rows > 0 && t4 <= ts.t4.back()) {
            fail_line(line_no, "T4 must be strictly increasing");
        }
        ts.t1.push_back(t1);
        ts.t2.push_back(t2);
        ts.t3.push_back(t3);
        ts.t4.push_back(t4);
        if (t3 < t2) {
            ++ts.acausal_count;
        }
        ++rows;
    }
    if (!header_seen) {
        throw ParseError("missing header 'i,T1,T2,T3,T4'");
    }
    if (rows == 0) {
        throw ParseError("no data rows");
    }
    return ts;
}

void write_estimate_csv(std::ostream& os, const SkewEstimate& est) {
    os << "# skewest v" << kVersion << " estimate\n";
    os << "alpha,n_pairs,beta1_hat,theta1_hat,correlation_free\n";
    os << est.alpha << ',' << est.n_pairs << ',' << format_double(est.skew)
       << ',' << format_double(est.reciprocal) << ','
       << bool_str(est.correlation_free) << "\n";
}

std::string estimate_json(const SkewEstimate& est) {
    return estimate_to_json(est).dump(2) + "\n";
}

void write_mse_csv(std::ostream& os, const MseReport& report) {
    os << "# skewest v" << kVersion << " mse-sweep\n";
    write_param_header(os, report.config.params, report.config.plan);
    os << "# n_trials=" << report.config.n_trials
       << " seed=" << report.config.seed << "\n";
    // Degenerate trials are rare enough that a column would stay zero; a
    // comment per affected cell keeps the table shape pinned yet honest.
    for (const MseRow& row : report.rows) {
        if (row.n_failures > 0) {
            os << "# degenerate_trials mode=" << to_string(row.mode)
               << " alpha=" << row.alpha << " count=" << row.n_failures
               << "\n";
        }
    }
    os << "mode,N,alpha,n_trials,mse,mean_beta1,ci_half_width,"
          "correlation_free,crb\n";
    for (const MseRow& row : report.rows) {
        os << to_string(row.mode) << ',' << row.n_rounds << ',' << row.alpha
           << ',' << row.n_trials << ',' << format_double(row.mse) << ','
           << format_double(row.mean_skew) << ','
           << format_double(row.ci_half_width) << ','
           << bool_str(row.correlation_free) << ','
           << format_double(row.crb_beta1) << "\n";
    }
}

std::string mse_json(const MseReport& report) {
    nlohmann::json rows = nlohmann::json::array();
    for (const MseRow& row : report.rows) {
        rows.push_back({
            {"mode", to_string(row.mode)},
            {"n_rounds", row.n_rounds},
            {"alpha", row.alpha},
            {"n_trials", row.n_trials},
            {"n_failures", row.n_failures},
            {"mse", row.mse},
            {"mean_beta1", row.mean_skew},
            {"ci_half_width", row.ci_half_width},
            {"correlation_free", row.correlation_free},
            {"crb", row.crb_beta1},
        });
    }
    const ExperimentConfig& cfg = report.config;
    nlohmann::json doc{
        {"version", kVersion},
        {"params",
         {{"beta0", cfg.params.offset},
          {"beta1", cfg.params.skew},
          {"d", cfg.params.fixed_delay},
          {"sigma", cfg.params.sigma}}},
        {"plan",
         {{"n_rounds", cfg.plan.n_rounds},
          {"h", cfg.plan.h_step},
          {"g", cfg.plan.g_step},
          {"t1_origin", cfg.plan.t1_origin},
          {"t4_offset", cfg.plan.t4_offset}}},
        {"n_trials", cfg.n_trials},
        {"seed", cfg.seed},
        {"rows", rows},
    };
    return doc.dump(2) + "\n";
}

void write_bounds_csv(std::ostream& os, const std::vector<BoundPoint>& curve,
                      double skew, double sigma, double h_step,
                      double g_step) {
    os << "# skewest v" << kVersion << " bound-curve\n";
    os << "# beta1=" << format_double(skew) << " sigma=" << format_double(sigma)
       << " h=" << format_double(h_step) << " g=" << format_double(g_step)
       << "\n";
    os << "alpha,crb_beta1\n";
    for (const BoundPoint& pt : curve) {
        os << pt.alpha << ',' << format_double(pt.crb_beta1) << "\n";
    }
}

void write_matrix(std::ostream& os, const Eigen::MatrixXd& m) {
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            if (c > 0) {
                os << ' ';
            }
            os << format_double(m(r, c));
        }
        os << "\n";
    }
}

void write_correlation_report(std::ostream& os, const CorrelationReport& rep) {
    os << "# skewest v" << kVersion << " correlation\n";
    os << "# n_rounds=" << rep.n_rounds << " alpha=" << rep.alpha
       << " correlation_free=" << bool_str(rep.correlation_free) << "\n";
    os << "m,n\n";
    for (const auto& [m, n] : rep.pairs) {
        os << m << ',' << n << "\n";
    }
}

}  // namespace skewest
