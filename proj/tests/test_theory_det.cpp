#include <doctest.h>

#include <cmath>

#include "prsa/rng.hpp"
#include "prsa/theory_det.hpp"

using namespace prsa;

namespace {

// xi2 in (0,1) realizing a requested sine ratio sin(pi xi2)/sin(pi xi1).
double xi2_for_ratio(double xi1, double ratio) {
    return std::asin(ratio * std::sin(M_PI * xi1)) / M_PI;
}

}  // namespace

TEST_CASE("det_limit_coeffs_c0: A xi = 1 gives constant integrands") {
    const auto [b1, b2] = det_limit_coeffs_c0(1.0, 1.0);
    CHECK(b1 == doctest::Approx(4.0 / (M_PI * M_PI)).epsilon(1e-12));
    CHECK(b2 == doctest::Approx(4.0 / (M_PI * M_PI)).epsilon(1e-12));

    const auto [c1, c2] = det_limit_coeffs_c0(2.0, 0.5);
    CHECK(c1 == doctest::Approx(4.0 / (M_PI * M_PI)).epsilon(1e-12));
    CHECK(c2 == doctest::Approx(4.0 * 4.0 * 0.5 / (M_PI * M_PI)).epsilon(1e-12));
}

TEST_CASE("det_limit_coeffs_c0: A -> 0 limit") {
    const auto [b1, b2] = det_limit_coeffs_c0(1e-8, 1.0);
    CHECK(b1 == doctest::Approx(2.0 / M_PI).epsilon(1e-7));
    CHECK(b2 == doctest::Approx(0.0).scale(1.0).epsilon(1e-7));
}

TEST_CASE("det_limit_coeffs_c0: pinned values at A=0.7, xi=0.8") {
    // Pinned by the 1e8-sample phase-space MC oracle (0.583310/0.130381) and a
    // 1e7-panel midpoint run of the closed-form integrals (0.583308/0.130361).
    const auto [b1, b2] = det_limit_coeffs_c0(0.7, 0.8);
    CHECK(b1 == doctest::Approx(0.583308134).epsilon(1e-7));
    CHECK(b2 == doctest::Approx(0.130360918).epsilon(1e-6));
}

TEST_CASE("det_limit_coeffs: c=0 path matches the closed form on a grid") {
    // 20-point (A, xi1, ratio) grid; the general-c route at c=0 must agree
    // with the simplified expressions within 1e-8. Ratios are capped by
    // 1/sin(pi xi1) (a sine ratio cannot exceed it).
    const double amplitudes[] = {0.3, 0.7, 1.1, 2.4, 3.5};
    const std::pair<double, double> freq_cases[] = {
        {0.17, 0.6}, {0.17, 1.5}, {0.42, 0.5}, {0.42, 0.95}};
    for (double amplitude : amplitudes) {
        for (const auto& [xi1, ratio] : freq_cases) {
            const double xi2 = xi2_for_ratio(xi1, ratio);
            const DetPrediction general = det_limit_coeffs(amplitude, xi1, xi2, 0.0);
            const auto [b1, b2] = det_limit_coeffs_c0(amplitude, ratio);
            CHECK(std::abs(general.B1 - b1) < 1e-8);
            CHECK(std::abs(general.B2 - b2) < 1e-8);
        }
    }
}

TEST_CASE("det_limit_coeffs: hypothesis and degenerate threshold errors") {
    const double s1 = std::sin(M_PI * 0.3), s2 = std::sin(M_PI * 0.6);
    const double cmax = 2.0 * (s1 + 0.5 * s2);
    CHECK_THROWS_AS(det_limit_coeffs(0.5, 0.3, 0.6, cmax + 0.1), HypothesisError);
    CHECK_THROWS_AS(det_limit_coeffs(0.5, 0.3, 0.6, cmax), HypothesisError);
    // Just inside the hypothesis the selection region is a sliver but valid.
    const DetPrediction pred = det_limit_coeffs(0.5, 0.3, 0.6, cmax - 1e-3);
    CHECK(std::isfinite(pred.B1));
    CHECK(std::isfinite(pred.B2));
}

TEST_CASE("det_limit_coeffs: threshold at the edge degenerates the denominator") {
    const double s1 = std::sin(M_PI * 0.3), s2 = std::sin(M_PI * 0.6);
    const double cmax = 2.0 * (s1 + 0.5 * s2);
    CHECK_THROWS_AS(det_limit_coeffs(0.5, 0.3, 0.6, cmax * (1.0 - 1e-15)),
                    DegenerateThresholdError);
}

TEST_CASE("det_limit_coeffs: very negative c accepts everything, B -> 0") {
    const DetPrediction pred = det_limit_coeffs(0.8, 0.3, 0.6, -50.0);
    CHECK(std::abs(pred.B1) < 1e-9);
    CHECK(std::abs(pred.B2) < 1e-9);
}

TEST_CASE("mc_det_limit_coeffs: trivial target at A xi = 1") {
    const double xi1 = 0.25;
    const double xi2 = xi2_for_ratio(xi1, 1.0);
    const McDetCoeffs mc = mc_det_limit_coeffs(1.0, xi1, xi2, 0.0, 10000000, 2718);
    CHECK(std::abs(mc.B1 - 4.0 / (M_PI * M_PI)) < 3.0 * mc.B1_stderr);
    CHECK(std::abs(mc.B2 - 4.0 / (M_PI * M_PI)) < 3.0 * mc.B2_stderr);
}

TEST_CASE("mc_det_limit_coeffs: antithetic pairing beats naive variance") {
    const double amplitude = 0.7, xi1 = 0.3, c = 0.35;
    const double xi2 = xi2_for_ratio(xi1, 0.8);
    const std::int64_t samples = 500000;
    const McDetCoeffs paired = mc_det_limit_coeffs(amplitude, xi1, xi2, c, samples, 11);

    // Naive oracle: same estimator without pairing, delta-method stderr.
    const double s1 = std::sin(M_PI * xi1), s2 = std::sin(M_PI * xi2);
    Rng rng(11);
    double sum_n = 0.0, ss_n = 0.0, sum_d = 0.0, ss_d = 0.0, cross = 0.0;
    for (std::int64_t i = 0; i < samples; ++i) {
        const double su = std::sin(rng.uniform(0.0, 2.0 * M_PI));
        const double sv = std::sin(rng.uniform(0.0, 2.0 * M_PI));
        const double hit = su * s1 + amplitude * sv * s2 > 0.5 * c ? 1.0 : 0.0;
        const double n = su * hit;
        sum_n += n;
        ss_n += n * n;
        sum_d += hit;
        ss_d += hit;
        cross += n * hit;
    }
    const double m = static_cast<double>(samples);
    const double ratio = sum_n / sum_d;
    const double var_n = ss_n / m - (sum_n / m) * (sum_n / m);
    const double var_d = ss_d / m - (sum_d / m) * (sum_d / m);
    const double cov_nd = cross / m - (sum_n / m) * (sum_d / m);
    const double naive_stderr =
        std::sqrt((var_n - 2.0 * ratio * cov_nd + ratio * ratio * var_d) /
                  ((sum_d / m) * (sum_d / m)) / m);
    CHECK(paired.B1_stderr / naive_stderr < 0.9);
}

TEST_CASE("mc_det_limit_coeffs: shrinking acceptance region stays finite") {
    const double amplitude = 0.7, xi1 = 0.3;
    const double xi2 = xi2_for_ratio(xi1, 0.8);
    const double s1 = std::sin(M_PI * xi1), s2 = std::sin(M_PI * xi2);
    const double c = 2.0 * (s1 + amplitude * s2) * 0.995;  // conditioning prob < 1%
    const McDetCoeffs mc = mc_det_limit_coeffs(amplitude, xi1, xi2, c, 2000000, 5);
    CHECK(std::isfinite(mc.B1));
    CHECK(std::isfinite(mc.B2));
    CHECK(mc.B1 > 0.0);

    CHECK_THROWS_AS(mc_det_limit_coeffs(amplitude, xi1, xi2, 2.0 * (s1 + amplitude * s2) + 0.5,
                                        100000, 1),
                    DegenerateThresholdError);
    CHECK_THROWS_AS(mc_det_limit_coeffs(amplitude, xi1, xi2, 0.0, 100, 1), ModelError);
}

TEST_CASE("mc oracle symmetry anchor: E[cos U | event] = 0") {
    const double amplitude = 0.7, xi1 = 0.3, c = 0.4;
    const double xi2 = xi2_for_ratio(xi1, 0.8);
    const double s1 = std::sin(M_PI * xi1), s2 = std::sin(M_PI * xi2);
    Rng rng(1234);
    const std::int64_t samples = 2000000;
    double sum = 0.0, ss = 0.0, hits = 0.0;
    for (std::int64_t i = 0; i < samples; ++i) {
        const double u = rng.uniform(0.0, 2.0 * M_PI);
        const double v = rng.uniform(0.0, 2.0 * M_PI);
        if (std::sin(u) * s1 + amplitude * std::sin(v) * s2 > 0.5 * c) {
            sum += std::cos(u);
            ss += std::cos(u) * std::cos(u);
            hits += 1.0;
        }
    }
    const double mean = sum / hits;
    const double se = std::sqrt(ss / hits - mean * mean) / std::sqrt(hits);
    CHECK(std::abs(mean) < 3.0 * se);
}

TEST_CASE("quadrature vs MC oracle across a small grid (3 sigma)") {
    int point = 0;
    for (double amplitude : {0.6, 1.5}) {
        for (double c : {0.0, 0.4}) {
            const double xi1 = 0.22;
            const double xi2 = xi2_for_ratio(xi1, 0.9);
            const DetPrediction quad = det_limit_coeffs(amplitude, xi1, xi2, c);
            const McDetCoeffs mc =
                mc_det_limit_coeffs(amplitude, xi1, xi2, c, 4000000, 100 + point);
            CHECK(std::abs(quad.B1 - mc.B1) < 3.0 * mc.B1_stderr);
            CHECK(std::abs(quad.B2 - mc.B2) < 3.0 * mc.B2_stderr);
            ++point;
        }
    }
}

TEST_CASE("det_limit_curve: antisymmetry and direct values") {
    DetPrediction pred;
    pred.B1 = 1.0;
    pred.B2 = 0.0;
    pred.xi1 = 0.25;
    pred.xi2 = 0.5;
    CHECK(det_limit_curve(pred, 0) == doctest::Approx(std::sqrt(2.0) / 2.0).epsilon(1e-12));

    pred.B1 = 0.583308134;
    pred.B2 = 0.130360918;
    pred.xi1 = 0.3;
    pred.xi2 = xi2_for_ratio(0.3, 0.8);
    for (int ell = -6; ell <= 5; ++ell)
        CHECK(det_limit_curve(pred, -ell - 1) ==
              doctest::Approx(-det_limit_curve(pred, ell)).epsilon(1e-12));
    // Arithmetic from the pinned coefficients at ell = 0..3.
    for (int ell = 0; ell <= 3; ++ell) {
        const double expected =
            0.583308134 * std::sin(M_PI * 0.3 * (2 * ell + 1)) +
            0.130360918 * std::sin(M_PI * pred.xi2 * (2 * ell + 1));
        CHECK(det_limit_curve(pred, ell) == doctest::Approx(expected).epsilon(1e-12));
    }
}

TEST_CASE("continuous_limit_coeffs: shared formula and discretization sweep") {
    const auto [b1c, b2c] = continuous_limit_coeffs(0.7, 0.8);
    const auto [b1d, b2d] = det_limit_coeffs_c0(0.7, 0.8);
    CHECK(b1c == doctest::Approx(b1d).epsilon(1e-14));
    CHECK(b2c == doctest::Approx(b2d).epsilon(1e-14));

    // sine-ratio xi(eps) -> xi monotonically as eps decreases.
    const double xi = 0.6180339887;
    double prev_gap = std::numeric_limits<double>::infinity();
    for (double eps : {0.1, 0.01, 0.001}) {
        const double gap = std::abs(discretized_frequency_ratio(xi, eps) - xi);
        CHECK(gap < prev_gap);
        CHECK(gap <= 2.0 * eps);  // dominated by a multiple of eps
        prev_gap = gap;
    }

    // Coefficient arguments: continuous shift s = ell*eps vs the discrete
    // (2 ell + 1)/2 offset; the gap is bounded by a constant times eps.
    for (double eps : {0.1, 0.01, 0.001}) {
        const double xi1 = eps, xi2 = xi * eps;
        double worst = 0.0;
        for (int ell = 0; ell <= 10; ++ell) {
            worst = std::max(worst, std::abs(std::sin(2.0 * M_PI * ell * xi1) -
                                             std::sin(M_PI * (2 * ell + 1) * xi1)));
            worst = std::max(worst, std::abs(std::sin(2.0 * M_PI * ell * xi2) -
                                             std::sin(M_PI * (2 * ell + 1) * xi2)));
        }
        CHECK(worst <= 2.0 * M_PI * (1.0 + xi) * eps);
    }
}

TEST_CASE("expected_zero_rate: regimes and pinned intermediate value") {
    CHECK(expected_zero_rate(0.5, 0.3) == doctest::Approx(2.0));
    CHECK(expected_zero_rate(0.5, 0.77) == doctest::Approx(2.0));
    CHECK(expected_zero_rate(3.0, 0.5) == doctest::Approx(1.0));   // 2 xi
    CHECK(expected_zero_rate(4.0, 0.3) == doctest::Approx(0.6));

    // Pinned by the sign-change counting oracle at T=1e5, dt=1e-3, at an
    // irrational frequency near 0.4 (counted 1.049850).
    const double xi = std::sqrt(3.0) / 4.33;
    const double formula = expected_zero_rate(1.5, xi);
    CHECK(formula == doctest::Approx(1.050400).epsilon(1e-4));
    CHECK(std::abs(formula - 1.049850) < 0.01 * 1.049850);
}

TEST_CASE("expected_zero_rate: continuity across the regime seams") {
    for (double xi : {0.2, 0.45, 0.7}) {
        // At the seams the three branches must agree to 1e-9. The A=1 seam has
        // square-root growth on the inside, so off-seam points are only sanity
        // checked at the matching sqrt(eps) scale.
        CHECK(std::abs(expected_zero_rate(1.0, xi) - 2.0) < 1e-9);
        CHECK(std::abs(expected_zero_rate(1.0 / xi, xi) - 2.0 * xi) < 1e-9);
        CHECK(std::abs(expected_zero_rate(std::nextafter(1.0 / xi, 0.0), xi) - 2.0 * xi) <
              1e-9);  // A xi = 1 seam is C^1: flat from inside too
        CHECK(std::abs(expected_zero_rate(1.0 + 1e-12, xi) - 2.0) < 1e-5);
        CHECK(std::abs(expected_zero_rate(1.0 - 1e-12, xi) - 2.0) == 0.0);
    }
}

TEST_CASE("expected_extrema_rate: substitution rule and counting oracle pin") {
    CHECK(expected_extrema_rate(1.2, 0.5) == doctest::Approx(2.0));  // A xi = 0.6 <= 1
    CHECK(expected_extrema_rate(4.0, 0.5) == doctest::Approx(1.0));  // (A xi) xi = 1
    // Pinned by counting sign changes of f' (counted 1.327180 at T=1e5).
    const double xi = std::sqrt(3.0) / 4.33;
    const double formula = expected_extrema_rate(3.0, xi);
    CHECK(std::abs(formula - 1.327180) < 0.01 * 1.327180);
    CHECK(expected_extrema_rate(3.0, xi) == doctest::Approx(expected_zero_rate(3.0 * xi, xi)));
}
