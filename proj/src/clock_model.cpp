// SPDX-License-Identifier: Apache-2.0

#include "skewest/clock_model.hpp"

#include <cmath>
#include <string>

#include "skewest/errors.hpp"

namespace skewest {

namespace {

void require_finite(double v, const char* name) {
    if (!std::isfinite(v)) {
        throw ConfigError(std::string(name) + " must be finite");
    }
}

}  // namespace

void ClockParams::validate() const {
    require_finite(offset, "offset");
    require_finite(skew, "skew");
    require_finite(fixed_delay, "fixed_delay");
    require_finite(sigma, "sigma");
    if (skew <= 0.0) {
        throw ConfigError("skew must be > 0, got " + std::to_string(skew));
    }
    if (fixed_delay < 0.0) {
        throw ConfigError("fixed_delay must be >= 0, got " +
                          std::to_string(fixed_delay));
    }
    if (sigma < 0.0) {
        throw ConfigError("sigma must be >= 0, got " + std::to_string(sigma));
    }
}

void SchedulePlan::validate() const {
    require_finite(h_step, "h_step");
    require_finite(g_step, "g_step");
    require_finite(t1_origin, "t1_origin");
    require_finite(t4_offset, "t4_offset");
    if (n_rounds < 2) {
        throw ConfigError("n_rounds must be >= 2, got " +
                          std::to_string(n_rounds));
    }
    if (h_step <= 0.0) {
        throw ConfigError("h_step must be > 0, got " + std::to_string(h_step));
    }
    if (g_step <= 0.0) {
        throw ConfigError("g_step must be > 0, got " + std::to_string(g_step));
    }
    if (t4_offset <= 0.0) {
        throw ConfigError("t4_offset must be > 0, got " +
                          std::to_string(t4_offset));
    }
}

TimestampSet generate_timestamps(const ClockParams& params,
                                 const SchedulePlan& plan, RngStream stream) {
    params.validate();
    plan.validate();

    const int n = plan.n_rounds;
    TimestampSet ts;
    ts.t1.resize(n);
    ts.t2.resize(n);
    ts.t3.resize(n);
    ts.t4.resize(n);

    Rng rng(stream);
    for (int i = 0; i < n; ++i) {
        const double t1 = plan.t1_origin + i * plan.h_step;
        const double t4 = plan.t1_origin + plan.t4_offset + i * plan.g_step;
        const double x = rng.gaussian(params.sigma);
        const double y = rng.gaussian(params.sigma);
        ts.t1[i] = t1;
        ts.t4[i] = t4;
        ts.t2[i] = params.skew * (t1 + params.fixed_delay + x) + params.offset;
        ts.t3[i] = params.skew * (t4 - params.fixed_delay - y) + params.offset;
        if (ts.t3[i] < ts.t2[i]) {
            ++ts.acausal_count;
        }
    }
    return ts;
}

}  // namespace skewest
