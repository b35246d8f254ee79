#ifndef PRSA_THEORY_DET_HPP
#define PRSA_THEORY_DET_HPP

#include <cstdint>
#include <utility>

#include "prsa/numerics.hpp"
#include "prsa/types.hpp"

namespace prsa {

/// Limit amplitudes of the two sine components the averaged cycle of a
/// two-harmonic signal converges to.
struct DetPrediction {
    double B1 = 0.0;
    double B2 = 0.0;
    double xi1 = 0.0;
    double xi2 = 0.0;
    double c = 0.0;
    double amplitude = 0.0;
};

/// General-threshold limit amplitudes. Both numerators are singular integrals
/// with clipped limits; the denominator uses the closed-form arcsine inner
/// integral, leaving a single singular axis:
///   D = \int_{-1}^{1} (pi/2 - asin(clip(u0(v)))) / sqrt(1-v^2) dv,
///   u0(v) = (c/2 - A v sin(pi xi2)) / sin(pi xi1).
/// Requires c < 2 (sin(pi xi1) + A sin(pi xi2)) (HypothesisError otherwise);
/// D below 1e-12 raises DegenerateThresholdError.
DetPrediction det_limit_coeffs(double amplitude, double xi1, double xi2, double c,
                               const QuadratureSpec& spec = {});

/// Zero-threshold closed form in the effective ratio xi:
///   B1 = (4/pi^2)     \int_0^{min(1, 1/(A xi))} sqrt((1 - A^2 xi^2 u^2)/(1 - u^2)) du
///   B2 = (4 A^2 xi/pi^2) \int_0^{min(1, 1/(A xi))} sqrt((1 - u^2)/(1 - A^2 xi^2 u^2)) du
std::pair<double, double> det_limit_coeffs_c0(double amplitude, double xi,
                                              const QuadratureSpec& spec = {});

struct McDetCoeffs {
    double B1 = 0.0;
    double B2 = 0.0;
    double B1_stderr = 0.0;
    double B2_stderr = 0.0;
    std::int64_t samples = 0;
};

/// Independent phase-space Monte Carlo oracle for the quadrature path:
/// U, V uniform on [0, 2 pi) with antithetic pairing (U,V) -> (-U,-V),
///   B1 = E[sin U | sin U sin(pi xi1) + A sin V sin(pi xi2) > c/2],
///   B2 = A E[sin V | same event].
/// Standard errors by the delta method on the ratio estimator.
McDetCoeffs mc_det_limit_coeffs(double amplitude, double xi1, double xi2, double c,
                                std::int64_t samples, std::uint64_t seed);

/// B1 sin(pi xi1 (2 l + 1)) + B2 sin(pi xi2 (2 l + 1)).
double det_limit_curve(const DetPrediction& pred, int ell);

/// Continuous-time coefficients: same integrals as the zero-threshold discrete
/// case with xi the raw frequency ratio instead of the sine ratio.
std::pair<double, double> continuous_limit_coeffs(double amplitude, double xi,
                                                  const QuadratureSpec& spec = {});

/// sin(pi xi eps) / sin(pi eps): the effective ratio of the eps-sampled signal,
/// which tends to xi as eps -> 0.
double discretized_frequency_ratio(double xi, double eps);

/// Zeros of cos(2 pi t + phi1) + A cos(2 pi xi t + phi2) per unit time:
/// 2 when A <= 1, 2 xi when A xi >= 1, and the arcsine/arccosine formula in
/// the intermediate regime.
double expected_zero_rate(double amplitude, double xi);

/// Extrema per unit time: zeros of the derivative, i.e. the zero rate with
/// A xi in place of A.
double expected_extrema_rate(double amplitude, double xi);

}  // namespace prsa

#endif
