// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "skewest/bounds.hpp"
#include "skewest/clock_model.hpp"
#include "skewest/diff_sequences.hpp"
#include "skewest/estimation.hpp"
#include "skewest/experiments.hpp"

namespace skewest {

/// Shortest round-trip decimal rendering of a double (printf %.17g is the
/// upper bound; this trims to the shortest string that parses back equal).
/// All writers below use it, which is what makes outputs byte-stable.
std::string format_double(double value);

/// Timestamp CSV: `# key=value` header lines, then `i,T1,T2,T3,T4` with a
/// 1-based round index.
void write_timestamps_csv(std::ostream& os, const TimestampSet& ts,
                          const ClockParams& params, const SchedulePlan& plan,
                          std::uint64_t seed);

/// Parses the format written by write_timestamps_csv. Throws ParseError with
/// the offending line number on malformed input, RangeError when indices are
/// not 1..N in order.
TimestampSet read_timestamps_csv(std::istream& is);

void write_estimate_csv(std::ostream& os, const SkewEstimate& est);
std::string estimate_json(const SkewEstimate& est);

void write_mse_csv(std::ostream& os, const MseReport& report);
std::string mse_json(const MseReport& report);

void write_bounds_csv(std::ostream& os, const std::vector<BoundPoint>& curve,
                      double skew, double sigma, double h_step, double g_step);

void write_matrix(std::ostream& os, const Eigen::MatrixXd& m);

void write_correlation_report(std::ostream& os, const CorrelationReport& rep);

}  // namespace skewest
