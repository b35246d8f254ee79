#ifndef PRSA_SIGNALS_HPP
#define PRSA_SIGNALS_HPP

#include <cstdint>

#include "prsa/types.hpp"

namespace prsa {

/// Parameters of the two-harmonic deterministic model
///   x_m = cos(2 pi xi1 m + phi1) + A cos(2 pi xi2 m + phi2).
///
/// The asymptotic theory assumes (1, xi1, xi2) linearly independent over Q;
/// floating-point frequencies can only approximate that, so any distinct
/// frequencies in (0,1) are accepted and equidistribution-based predictions
/// are approximations at finite precision.
struct TwoHarmonicParams {
    double amplitude = 1.0;  // A
    double xi1 = 0.0;
    double xi2 = 0.0;
    double phi1 = 0.0;
    double phi2 = 0.0;

    void validate() const;
};

/// ARMA(p, q) with Gaussian innovations:
///   x_t = sum_i ar[i-1] x_{t-i} + e_t + sum_j ma[j-1] e_{t-j},  e ~ N(0, sigma^2).
struct ArmaParams {
    Vector ar;
    Vector ma;
    double sigma = 1.0;

    void validate() const;
    /// Largest modulus among characteristic roots; < 1 iff stationary.
    double max_char_root() const;
};

/// Burn-in long enough for geometric forgetting of the zero initial state:
/// 10 (p+q+1) / (1 - max char root), capped at 10^4.
int default_burn_in(const ArmaParams& params);

/// Samples x_m for m = m_lo..m_hi inclusive (origin_index = m_lo).
TimeSeries sample_two_harmonic(const TwoHarmonicParams& params, std::int64_t m_lo,
                               std::int64_t m_hi);

TimeSeries simulate_arma(const ArmaParams& params, Index n, std::uint64_t seed, int burn_in);
TimeSeries simulate_arma(const ArmaParams& params, Index n, std::uint64_t seed);

/// Exact theoretical autocovariance C(0..k_max): Yule-Walker solve for pure AR
/// models, MA(infinity) expansion truncated at coefficient 1e-14 otherwise.
CovarianceFunction arma_autocovariance(const ArmaParams& params, Index k_max);

/// Exact stationary Gaussian sample path by circulant embedding of the
/// truncated covariance table. Deterministic given the seed. Throws
/// EmbeddingError if the embedding has negative eigenvalues beyond
/// 1e-10 * C(0) (larger padding may help).
TimeSeries sample_stationary_gaussian(const CovarianceFunction& cov, Index n,
                                      std::uint64_t seed);

}  // namespace prsa

#endif
