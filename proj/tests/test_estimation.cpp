// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdint>

#include "skewest/bounds.hpp"
#include "skewest/errors.hpp"
#include "skewest/estimation.hpp"

using namespace skewest;

namespace {

DiffSet hand_diffs() {
    DiffSet ds;
    ds.alpha = 1;
    ds.d1 = {3.0};
    ds.d2 = {3.3};
    ds.d3 = {2.7};
    ds.d4 = {3.0};
    return ds;
}

}  // namespace

TEST_CASE("estimate matches the hand-computed ratio") {
    // num = 3.3^2 + 2.7^2 = 18.18, den = 3*3.3 + 3*2.7 = 18, ratio = 1.01.
    const SkewEstimate est = estimate_skew(hand_diffs());
    CHECK(est.skew == doctest::Approx(1.01).epsilon(1e-14));
    CHECK(est.reciprocal == doctest::Approx(1.0 / 1.01).epsilon(1e-14));
    CHECK(est.alpha == 1);
    CHECK(est.n_pairs == 1);
    CHECK(est.correlation_free);  // alpha = N-1 = 1
}

TEST_CASE("estimate rejects empty and degenerate input") {
    DiffSet empty;
    CHECK_THROWS_AS(estimate_skew(empty), RangeError);

    DiffSet zeros;
    zeros.alpha = 1;
    zeros.d1 = {0.0, 0.0};
    zeros.d2 = {0.0, 0.0};
    zeros.d3 = {0.0, 0.0};
    zeros.d4 = {0.0, 0.0};
    CHECK_THROWS_AS(estimate_skew(zeros), DegenerateInputError);

    // Orthogonal case: nonzero numerator, vanishing denominator.
    DiffSet ortho;
    ortho.alpha = 1;
    ortho.d1 = {1.0, -1.0};
    ortho.d2 = {1.0, 1.0};
    ortho.d3 = {0.0, 0.0};
    ortho.d4 = {0.0, 0.0};
    CHECK_THROWS_AS(estimate_skew(ortho), DegenerateInputError);
}

TEST_CASE("correlation flag reflects the gap, not the estimate") {
    ClockParams p;
    p.skew = 1.01;
    p.sigma = 0.1;
    SchedulePlan plan;
    plan.n_rounds = 20;
    const TimestampSet ts = generate_timestamps(p, plan, RngStream{21, 0});
    CHECK(estimate_skew(build_diffs(ts, 13)).correlation_free);
    CHECK(estimate_skew(build_diffs(ts, 10)).correlation_free);
    CHECK_FALSE(estimate_skew(build_diffs(ts, 9)).correlation_free);
    CHECK_FALSE(estimate_skew(build_diffs(ts, 5)).correlation_free);
}

TEST_CASE("classic estimator is the full-span special case") {
    ClockParams p;
    p.skew = 0.97;
    p.sigma = 0.05;
    SchedulePlan plan;
    plan.n_rounds = 16;
    const TimestampSet ts = generate_timestamps(p, plan, RngStream{30, 0});
    const SkewEstimate classic = estimate_skew_classic(ts);
    const SkewEstimate manual = estimate_skew(build_diffs(ts, 15));
    CHECK(classic.skew == manual.skew);
    CHECK(classic.alpha == 15);
    CHECK(classic.n_pairs == 1);
    CHECK(classic.correlation_free);

    TimestampSet one;
    one.t1 = {0.0};
    one.t2 = {1.0};
    one.t3 = {2.0};
    one.t4 = {3.0};
    CHECK_THROWS_AS(estimate_skew_classic(one), RangeError);
}

TEST_CASE("noiseless data is recovered to machine accuracy") {
    for (double skew : {0.5, 0.999, 1.01, 2.0}) {
        ClockParams p;
        p.offset = -7.25;
        p.skew = skew;
        p.fixed_delay = 2.0;
        p.sigma = 0.0;
        SchedulePlan plan;
        plan.n_rounds = 17;
        plan.h_step = 3.0;
        plan.g_step = 5.0;
        const TimestampSet ts = generate_timestamps(p, plan, RngStream{7, 0});
        for (int alpha = valid_gap_range(17).lo; alpha <= 16; ++alpha) {
            const SkewEstimate est = estimate_skew(build_diffs(ts, alpha));
            CHECK(std::fabs(est.skew - skew) / skew <= 1e-14);
        }
    }
}

TEST_CASE("two-round classic estimate is exact without noise") {
    ClockParams p;
    p.offset = 4.0;
    p.skew = 1.3;
    p.fixed_delay = 0.5;
    p.sigma = 0.0;
    SchedulePlan plan;
    const TimestampSet ts = generate_timestamps(p, plan, RngStream{1, 0});
    REQUIRE(ts.n_rounds() == 2);
    CHECK(estimate_skew_classic(ts).skew ==
          doctest::Approx(1.3).epsilon(1e-14));
}

TEST_CASE("estimate is scale free in the diff sequences") {
    ClockParams p;
    p.skew = 1.01;
    p.sigma = 0.1;
    SchedulePlan plan;
    plan.n_rounds = 20;
    const TimestampSet ts = generate_timestamps(p, plan, RngStream{40, 0});
    const DiffSet base = build_diffs(ts, 12);
    const double ref = estimate_skew(base).skew;

    for (double c : {2.0, 3.0}) {
        DiffSet scaled = base;
        for (auto* seq : {&scaled.d1, &scaled.d2, &scaled.d3, &scaled.d4}) {
            for (double& v : *seq) v *= c;
        }
        const double got = estimate_skew(scaled).skew;
        if (c == 2.0) {
            // Power-of-two scaling is exact in binary floating point.
            CHECK(got == ref);
        } else {
            CHECK(std::fabs(got - ref) / ref <= 1e-12);
        }
    }
}

TEST_CASE("estimate is invariant under rescaling the whole run") {
    // T -> c*T via scaling origin, steps, delay, noise, and offset together.
    ClockParams p;
    p.offset = -3.5;
    p.skew = 1.01;
    p.fixed_delay = 1.0;
    p.sigma = 0.1;
    SchedulePlan plan;
    plan.n_rounds = 20;
    plan.t1_origin = 5.0;
    plan.t4_offset = 3.0;

    const RngStream stream{55, 0};
    const double ref =
        estimate_skew(build_diffs(generate_timestamps(p, plan, stream), 12))
            .skew;

    for (double c : {2.0, 3.0}) {
        ClockParams cp = p;
        cp.offset *= c;
        cp.fixed_delay *= c;
        cp.sigma *= c;
        SchedulePlan cplan = plan;
        cplan.h_step *= c;
        cplan.g_step *= c;
        cplan.t1_origin *= c;
        cplan.t4_offset *= c;
        const double got = estimate_skew(build_diffs(
                               generate_timestamps(cp, cplan, stream), 12))
                               .skew;
        if (c == 2.0) {
            CHECK(got == ref);
        } else {
            CHECK(std::fabs(got - ref) / ref <= 1e-12);
        }
    }
}

TEST_CASE("reciprocal stays consistent on noisy data") {
    ClockParams p;
    p.skew = 0.75;
    p.sigma = 0.4;
    SchedulePlan plan;
    plan.n_rounds = 24;
    for (std::uint64_t run = 0; run < 50; ++run) {
        const TimestampSet ts =
            generate_timestamps(p, plan, RngStream{60, run});
        for (int alpha : {1, 7, 12, 17, 23}) {
            const SkewEstimate est = estimate_skew(build_diffs(ts, alpha));
            CHECK(std::fabs(est.skew * est.reciprocal - 1.0) <= 1e-12);
        }
    }
}

TEST_CASE("noisy estimate concentrates near the true skew") {
    ClockParams p;
    p.skew = 1.01;
    p.sigma = 0.01;
    SchedulePlan plan;
    plan.n_rounds = 100;
    const TimestampSet ts = generate_timestamps(p, plan, RngStream{77, 0});
    const SkewEstimate est = estimate_skew(build_diffs(ts, 66));
    CHECK(est.skew == doctest::Approx(1.01).epsilon(1e-3));
}

TEST_CASE("real-valued optimal gap matches the closed form") {
    // Oracle: N/3 + sqrt(N^2/9 - 2 s^2 sigma^2 / (s^2 H^2 + G^2)).
    CHECK(optimal_gap_real(20, 1.0, 0.1, 10.0, 10.0) ==
          doctest::Approx(13.333325833329114).epsilon(1e-14));
    CHECK(optimal_gap_real(20, 1.01, 0.1, 10.0, 10.0) ==
          doctest::Approx(13.333325758704012).epsilon(1e-14));
    CHECK(optimal_gap_real(30, 1.01, 0.1, 10.0, 10.0) ==
          doctest::Approx(19.999994950248713).epsilon(1e-14));
    // sigma = 0 collapses to 2N/3 exactly.
    CHECK(optimal_gap_real(30, 1.0, 0.0, 10.0, 10.0) == 20.0);
}

TEST_CASE("real optimal gap stays above the half-span boundary") {
    // Whenever the discriminant is nonnegative on this grid the real optimum
    // lands strictly inside ((N-1)/2, 2N/3].
    for (int n = 4; n <= 200; ++n) {
        for (double s : {0.5, 1.0, 2.0}) {
            for (double sig : {0.0, 0.1, 1.0, 5.0}) {
                const double opt = optimal_gap_real(n, s, sig, 10.0, 10.0);
                CHECK(opt > (n - 1) / 2.0);
                // N/3 + sqrt(N^2/9) can overshoot 2N/3 by an ulp.
                CHECK(opt <= 2.0 * n / 3.0 + 1e-12 * n);
            }
        }
    }
}

TEST_CASE("optimal gap handles domain edges") {
    CHECK_THROWS_AS(optimal_gap_real(2, 1.0, 10.0, 0.1, 0.1), DomainError);
    CHECK_THROWS_AS(optimal_gap_real(20, 0.0, 0.1, 10.0, 10.0), DomainError);
    CHECK_THROWS_AS(optimal_gap_real(20, 1.0, 0.1, 0.0, 10.0), DomainError);
    CHECK_THROWS_AS(optimal_gap_real(1, 1.0, 0.1, 10.0, 10.0), RangeError);
}

TEST_CASE("integer optimal gap picks the better neighbor") {
    CHECK(optimal_gap(20, 1.01, 0.1, 10.0, 10.0) == 13);
    CHECK(optimal_gap(30, 1.01, 0.1, 10.0, 10.0) == 20);
    // sigma = 0: every gap is exact, the tie resolves to the smaller one.
    CHECK(optimal_gap(4, 1.0, 0.0, 10.0, 10.0) == 2);
    CHECK(optimal_gap(30, 1.0, 0.0, 10.0, 10.0) == 20);
}

TEST_CASE("integer optimal gap clamps into the usable range") {
    // Large sigma drags the real optimum toward N/3, below the range.
    const double sigma = 66.0;
    const double real = optimal_gap_real(20, 1.0, sigma, 10.0, 10.0);
    CHECK(real < 10.0);
    CHECK(optimal_gap(20, 1.0, sigma, 10.0, 10.0) == 10);

    for (int n : {4, 9, 20, 51, 200}) {
        for (double s : {0.5, 1.0, 2.0}) {
            for (double sig : {0.0, 0.1, 1.0, 5.0}) {
                const int opt = optimal_gap(n, s, sig, 10.0, 10.0);
                CHECK(valid_gap_range(n).contains(opt));
            }
        }
    }
}
