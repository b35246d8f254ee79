#ifndef PRSA_NUMERICS_HPP
#define PRSA_NUMERICS_HPP

#include <cmath>
#include <cstdint>
#include <functional>

#include "prsa/errors.hpp"
#include "prsa/types.hpp"

namespace prsa {

struct QuadratureSpec {
    double abs_tol = 1e-9;
    int max_refinements = 20;

    void validate() const {
        if (!(abs_tol > 0.0)) throw ModelError("quadrature abs_tol must be positive");
        if (max_refinements < 1) throw ModelError("quadrature max_refinements must be >= 1");
    }
};

/// Integrates f over [a, b], allowing inverse-square-root singularities at
/// either endpoint. Strategy: the substitution u = mid + half*sin(theta) turns
/// an arcsine-type weight into a smooth integrand on [-pi/2, pi/2], which is
/// then handled by fixed-order Gauss-Legendre panels, bisected until two
/// successive refinements agree within abs_tol.
///
/// Throws QuadratureError (carrying the last two iterates) on non-convergence.
double integrate_singular(const std::function<double(double)>& f, double a, double b,
                          const QuadratureSpec& spec = {});

/// Standard Gaussian tail Q(x) = P(N > x). Saturates to 0/1 in extreme tails.
inline double gaussian_tail(double x) { return 0.5 * std::erfc(x / M_SQRT2); }

/// Standard normal density.
inline double gaussian_pdf(double x) {
    return std::exp(-0.5 * x * x) / std::sqrt(2.0 * M_PI);
}

/// Clamp to [-1, 1]. The argument is structurally allowed far outside the
/// interval (the clamp encodes an indicator's support).
inline double clip_unit(double x) { return x < -1.0 ? -1.0 : (x > 1.0 ? 1.0 : x); }

/// Clamp to [-1, 1] where only floating-point drift is expected; drift wider
/// than max_drift indicates a bug upstream and throws.
inline double clip_unit_checked(double x, double max_drift = 1e-12) {
    const double clipped = clip_unit(x);
    if (std::abs(x - clipped) > max_drift)
        throw Error("clip width exceeded: argument drifted outside [-1,1]");
    return clipped;
}

/// Mean vector plus covariance matrix of a (possibly degenerate) Gaussian.
struct GaussianSpec {
    Vector mean;
    Matrix cov;

    Index dim() const { return mean.size(); }
    void validate() const;
};

/// Draws `count` joint-Gaussian samples, one per column (dim x count).
/// Deterministic given the seed. The covariance is factored by a pivoted
/// LDL^T; slightly indefinite inputs fall back to a recorded diagonal jitter,
/// and anything beyond that tolerance throws DecompositionError.
Matrix mvn_sample(const GaussianSpec& spec, Index count, std::uint64_t seed,
                  double* jitter_used = nullptr);

}  // namespace prsa

#endif
