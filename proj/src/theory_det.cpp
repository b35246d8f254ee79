#include "prsa/theory_det.hpp"

#include <cmath>

#include "prsa/rng.hpp"

namespace prsa {

namespace {

void check_two_harmonic_args(double amplitude, double xi1, double xi2) {
    if (!(amplitude > 0.0)) throw ModelError("amplitude must be positive");
    if (!(xi1 > 0.0 && xi1 < 1.0)) throw ModelError("xi1 must lie in (0,1)");
    if (!(xi2 > 0.0 && xi2 < 1.0)) throw ModelError("xi2 must lie in (0,1)");
}

// Intervals this narrow cannot be resolved next to the +-1 singular points
// (the abscissae round onto the endpoint); their contribution is O(width)
// because the clipped limit always carries a square-root-vanishing factor.
constexpr double kSliverWidth = 1e-13;

// Numerator integral shared by B1 and B2: the roles of the two weights
// (s_self for the averaged harmonic, s_other for the conditioning one) swap.
double clipped_numerator(double c, double s_self, double s_other,
                         const QuadratureSpec& spec) {
    const double lo = std::max(-1.0, (0.5 * c - s_self) / s_other);
    const double hi = std::min(1.0, (0.5 * c + s_self) / s_other);
    if (!(lo + kSliverWidth < hi)) return 0.0;
    auto integrand = [=](double u) {
        const double arg = (0.5 * c - u * s_other) / s_self;
        const double num = std::max(0.0, 1.0 - arg * arg);
        return std::sqrt(num / std::max(1.0 - u * u, 0.0));
    };
    return integrate_singular(integrand, lo, hi, spec);
}

}  // namespace

DetPrediction det_limit_coeffs(double amplitude, double xi1, double xi2, double c,
                               const QuadratureSpec& spec) {
    check_two_harmonic_args(amplitude, xi1, xi2);
    const double s1 = std::sin(M_PI * xi1);
    const double s2 = std::sin(M_PI * xi2);
    if (!(c < 2.0 * (s1 + amplitude * s2)))
        throw HypothesisError("threshold too large: need c < 2 (sin(pi xi1) + A sin(pi xi2))");

    // u0(v) = (c/2 - A v s2)/s1 decreases in v, crossing +1 at v_minus and -1
    // at v_plus. The clip makes the integrand piecewise: zero left of v_minus,
    // an arcsine closed form right of v_plus, and one smooth piece between
    // (the split keeps the clip cusps at panel endpoints, where the sin-theta
    // substitution neutralizes them).
    const double v_minus = (0.5 * c - s1) / (amplitude * s2);
    const double v_plus = (0.5 * c + s1) / (amplitude * s2);

    double denom = 0.0;
    const double mid_lo = std::max(-1.0, v_minus);
    const double mid_hi = std::min(1.0, v_plus);
    if (mid_lo + kSliverWidth < mid_hi) {
        auto denominator_integrand = [=](double v) {
            const double u0 = (0.5 * c - amplitude * v * s2) / s1;
            return (M_PI_2 - std::asin(clip_unit(u0))) /
                   std::sqrt(std::max(1.0 - v * v, 0.0));
        };
        denom += integrate_singular(denominator_integrand, mid_lo, mid_hi, spec);
    }
    if (v_plus < 1.0)
        denom += M_PI * (M_PI_2 - std::asin(clip_unit(std::max(-1.0, v_plus))));
    if (denom < 1e-12)
        throw DegenerateThresholdError("selection probability integral vanished (c too large)");

    DetPrediction pred;
    pred.xi1 = xi1;
    pred.xi2 = xi2;
    pred.c = c;
    pred.amplitude = amplitude;
    pred.B1 = clipped_numerator(c, s1, amplitude * s2, spec) / denom;
    pred.B2 = amplitude * clipped_numerator(c, amplitude * s2, s1, spec) / denom;
    return pred;
}

std::pair<double, double> det_limit_coeffs_c0(double amplitude, double xi,
                                              const QuadratureSpec& spec) {
    if (!(amplitude > 0.0)) throw ModelError("amplitude must be positive");
    if (!(xi > 0.0)) throw ModelError("xi must be positive");
    const double axi = amplitude * xi;
    const double upper = std::min(1.0, 1.0 / axi);
    const double pi2 = M_PI * M_PI;

    double b1;
    if (axi == 1.0) {
        b1 = 4.0 / pi2;  // constant integrand
    } else {
        b1 = 4.0 / pi2 *
             integrate_singular(
                 [=](double u) {
                     return std::sqrt(std::max(1.0 - axi * axi * u * u, 0.0) /
                                      std::max(1.0 - u * u, 0.0));
                 },
                 0.0, upper, spec);
    }

    double b2;
    if (axi == 1.0) {
        b2 = 4.0 * amplitude * amplitude * xi / pi2;
    } else {
        b2 = 4.0 * amplitude * amplitude * xi / pi2 *
             integrate_singular(
                 [=](double u) {
                     return std::sqrt(std::max(1.0 - u * u, 0.0) /
                                      std::max(1.0 - axi * axi * u * u, 0.0));
                 },
                 0.0, upper, spec);
    }
    return {b1, b2};
}

McDetCoeffs mc_det_limit_coeffs(double amplitude, double xi1, double xi2, double c,
                                std::int64_t samples, std::uint64_t seed) {
    check_two_harmonic_args(amplitude, xi1, xi2);
    if (samples < 10000) throw ModelError("mc_det_limit_coeffs needs samples >= 1e4");
    const double s1 = std::sin(M_PI * xi1);
    const double s2 = std::sin(M_PI * xi2);
    const double half_c = 0.5 * c;

    // Antithetic pairs: each base draw (U, V) is averaged with (-U, -V).
    Rng rng(seed);
    double sum_n1 = 0.0, sum_n2 = 0.0, sum_d = 0.0;
    double ss_n1 = 0.0, ss_n2 = 0.0, ss_d = 0.0;
    double cross_n1d = 0.0, cross_n2d = 0.0;
    for (std::int64_t i = 0; i < samples; ++i) {
        const double su = std::sin(rng.uniform(0.0, 2.0 * M_PI));
        const double sv = std::sin(rng.uniform(0.0, 2.0 * M_PI));
        const bool hit_pos = su * s1 + amplitude * sv * s2 > half_c;
        const bool hit_neg = -(su * s1 + amplitude * sv * s2) > half_c;
        const double n1 = 0.5 * (su * (hit_pos ? 1.0 : 0.0) - su * (hit_neg ? 1.0 : 0.0));
        const double n2 = 0.5 * amplitude *
                          (sv * (hit_pos ? 1.0 : 0.0) - sv * (hit_neg ? 1.0 : 0.0));
        const double d = 0.5 * ((hit_pos ? 1.0 : 0.0) + (hit_neg ? 1.0 : 0.0));
        sum_n1 += n1;
        sum_n2 += n2;
        sum_d += d;
        ss_n1 += n1 * n1;
        ss_n2 += n2 * n2;
        ss_d += d * d;
        cross_n1d += n1 * d;
        cross_n2d += n2 * d;
    }
    if (sum_d <= 0.0)
        throw DegenerateThresholdError("conditioning event never hit; c too large");

    const double m = static_cast<double>(samples);
    const double mean_d = sum_d / m;
    auto ratio_stderr = [&](double sum_n, double ss_n, double cross_nd, double ratio) {
        const double var_n = ss_n / m - (sum_n / m) * (sum_n / m);
        const double var_d = ss_d / m - mean_d * mean_d;
        const double cov_nd = cross_nd / m - (sum_n / m) * mean_d;
        const double var_ratio =
            (var_n - 2.0 * ratio * cov_nd + ratio * ratio * var_d) / (mean_d * mean_d);
        return std::sqrt(std::max(var_ratio, 0.0) / m);
    };

    McDetCoeffs out;
    out.samples = samples;
    out.B1 = sum_n1 / sum_d;
    out.B2 = sum_n2 / sum_d;
    out.B1_stderr = ratio_stderr(sum_n1, ss_n1, cross_n1d, out.B1);
    out.B2_stderr = ratio_stderr(sum_n2, ss_n2, cross_n2d, out.B2);
    return out;
}

double det_limit_curve(const DetPrediction& pred, int ell) {
    const double phase = M_PI * (2.0 * ell + 1.0);
    return pred.B1 * std::sin(pred.xi1 * phase) + pred.B2 * std::sin(pred.xi2 * phase);
}

std::pair<double, double> continuous_limit_coeffs(double amplitude, double xi,
                                                  const QuadratureSpec& spec) {
    return det_limit_coeffs_c0(amplitude, xi, spec);
}

double discretized_frequency_ratio(double xi, double eps) {
    if (!(eps > 0.0)) throw ModelError("eps must be positive");
    return std::sin(M_PI * xi * eps) / std::sin(M_PI * eps);
}

double expected_zero_rate(double amplitude, double xi) {
    if (!(amplitude > 0.0)) throw ModelError("amplitude must be positive");
    if (!(xi > 0.0 && xi < 1.0)) throw ModelError("xi must lie in (0,1)");
    if (amplitude <= 1.0) return 2.0;
    if (amplitude * xi >= 1.0) return 2.0 * xi;
    // Intermediate regime 1 < A < 1/xi.
    const double r = clip_unit_checked(std::sqrt(
        (1.0 - amplitude * amplitude * xi * xi) / (1.0 - xi * xi)));
    return 4.0 / M_PI *
           (std::asin(clip_unit_checked(r / amplitude)) + xi * std::acos(r));
}

double expected_extrema_rate(double amplitude, double xi) {
    if (!(xi > 0.0 && xi < 1.0)) throw ModelError("xi must lie in (0,1)");
    return expected_zero_rate(amplitude * xi, xi);
}

}  // namespace prsa
