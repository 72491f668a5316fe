// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <utility>
#include <vector>

#include "skewest/bounds.hpp"
#include "skewest/errors.hpp"
#include "skewest/estimation.hpp"

using namespace skewest;

TEST_CASE("bound matches independently computed values") {
    // 2 s^2 sigma^2 / ((N-a) a^2 (H^2+G^2)) evaluated by hand.
    CHECK(crb_skew(20, 13, 1.01, 0.1, 10.0, 10.0).crb_beta1 ==
          doctest::Approx(8.622992392223163e-08).epsilon(1e-15));
    CHECK(crb_skew(20, 10, 1.01, 0.1, 10.0, 10.0).crb_beta1 ==
          doctest::Approx(1.0201000000000001e-07).epsilon(1e-15));
    CHECK(crb_skew(30, 20, 1.01, 0.1, 10.0, 10.0).crb_beta1 ==
          doctest::Approx(2.5502500000000003e-08).epsilon(1e-15));
    CHECK(crb_skew(20, 5, 1.01, 0.1, 10.0, 10.0).crb_beta1 ==
          doctest::Approx(2.720266666666667e-07).epsilon(1e-15));
}

TEST_CASE("bound is exactly zero without noise") {
    CHECK(crb_skew(20, 13, 1.01, 0.0, 10.0, 10.0).crb_beta1 == 0.0);
    CHECK(crb_skew(4, 2, 0.5, 0.0, 3.0, 7.0).crb_beta1 == 0.0);
}

TEST_CASE("bound scales as the closed form dictates") {
    const double base = crb_skew(20, 12, 1.0, 0.1, 10.0, 10.0).crb_beta1;
    // Quadratic in sigma and in skew.
    CHECK(crb_skew(20, 12, 1.0, 0.2, 10.0, 10.0).crb_beta1 ==
          doctest::Approx(4.0 * base).epsilon(1e-15));
    CHECK(crb_skew(20, 12, 2.0, 0.1, 10.0, 10.0).crb_beta1 ==
          doctest::Approx(4.0 * base).epsilon(1e-15));
    // Symmetric in the two schedule steps.
    CHECK(crb_skew(20, 12, 1.0, 0.1, 3.0, 7.0).crb_beta1 ==
          crb_skew(20, 12, 1.0, 0.1, 7.0, 3.0).crb_beta1);
    // Doubling the pair count (via N) halves the bound.
    const double m7 = crb_skew(19, 12, 1.0, 0.1, 10.0, 10.0).crb_beta1;
    const double m14 = crb_skew(26, 12, 1.0, 0.1, 10.0, 10.0).crb_beta1;
    CHECK(m14 == doctest::Approx(m7 / 2.0).epsilon(1e-15));
}

TEST_CASE("bound is invariant under a common time rescale") {
    const double base = crb_skew(20, 12, 1.01, 0.1, 10.0, 10.0).crb_beta1;
    for (double c : {2.0, 3.0, 0.125}) {
        CHECK(crb_skew(20, 12, 1.01, c * 0.1, c * 10.0, c * 10.0).crb_beta1 ==
              doctest::Approx(base).epsilon(1e-15));
    }
}

TEST_CASE("bound orders by the pair-count leverage product") {
    // For fixed N, sigma, H=G the bound is a strictly decreasing function
    // of (N - alpha) * alpha^2.
    const int n = 20;
    std::vector<std::pair<double, double>> pts;
    for (int alpha = 1; alpha < n; ++alpha) {
        pts.emplace_back(
            static_cast<double>(n - alpha) * alpha * alpha,
            crb_skew(n, alpha, 1.01, 0.1, 10.0, 10.0).crb_beta1);
    }
    std::sort(pts.begin(), pts.end());
    for (std::size_t i = 1; i < pts.size(); ++i) {
        if (pts[i].first > pts[i - 1].first) {
            CHECK(pts[i].second < pts[i - 1].second);
        }
    }
}

TEST_CASE("curve argmin agrees with the optimal gap rule") {
    std::vector<int> alphas;
    for (int a = 10; a <= 19; ++a) alphas.push_back(a);
    const auto curve = crb_curve(20, 1.01, 0.1, 10.0, 10.0, alphas);
    const auto best = std::min_element(
        curve.begin(), curve.end(), [](const auto& a, const auto& b) {
            return a.crb_beta1 < b.crb_beta1;
        });
    CHECK(best->alpha == optimal_gap(20, 1.01, 0.1, 10.0, 10.0));
    for (const BoundPoint& pt : curve) {
        CHECK(pt.crb_beta1 > 0.0);
    }
}

TEST_CASE("bound validates its arguments") {
    CHECK_THROWS_AS(crb_skew(20, 0, 1.0, 0.1, 10.0, 10.0), RangeError);
    CHECK_THROWS_AS(crb_skew(20, 20, 1.0, 0.1, 10.0, 10.0), RangeError);
    CHECK_THROWS_AS(crb_skew(20, 10, 0.0, 0.1, 10.0, 10.0), DomainError);
    CHECK_THROWS_AS(crb_skew(20, 10, 1.0, -0.1, 10.0, 10.0), DomainError);
    CHECK_THROWS_AS(crb_skew(20, 10, 1.0, 0.1, 0.0, 10.0), DomainError);
    CHECK_THROWS_AS(crb_skew(20, 10, 1.0, 0.1, 10.0, -1.0), DomainError);
}

TEST_CASE("curve preserves the requested gap order") {
    const std::vector<int> alphas = {19, 5, 13};
    const auto curve = crb_curve(20, 1.01, 0.1, 10.0, 10.0, alphas);
    REQUIRE(curve.size() == 3);
    for (std::size_t i = 0; i < alphas.size(); ++i) {
        CHECK(curve[i].alpha == alphas[i]);
        CHECK(curve[i].n_rounds == 20);
        CHECK(curve[i].crb_beta1 ==
              crb_skew(20, alphas[i], 1.01, 0.1, 10.0, 10.0).crb_beta1);
    }
}
