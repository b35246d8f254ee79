#ifndef PRSA_THEORY_STOCH_HPP
#define PRSA_THEORY_STOCH_HPP

#include <cstdint>

#include "prsa/types.hpp"

namespace prsa {

/// Law-of-large-numbers limit vector zeta(l), l = -L..L (stored at zeta[l+L]).
struct StochPrediction {
    Vector zeta;
    double c = 0.0;
    int window = 0;  // L
    CovarianceFunction cov;

    double at(int ell) const { return zeta[ell + window]; }
};

/// zeta_l = (C(l) - C(l+1)) / sqrt(4 pi (C(0)-C(1)))
///          * exp(-c^2 / (4 (C(0)-C(1)))) / Q(c / sqrt(2 (C(0)-C(1)))).
/// Requires C(0) > 0 and C(0) > C(1); lags beyond the table horizon raise
/// HorizonError.
double lln_limit(const CovarianceFunction& cov, double c, std::int64_t ell);

StochPrediction lln_limit_vector(const CovarianceFunction& cov, double c, int L);

/// Asymptotic covariance of sqrt(2n+1) (z_n - zeta), estimated entrywise by
/// Monte Carlo over the exact joint Gaussian of (x_l, w_0, x_{l'+h}, w_h),
/// with the lag sum truncated at |h| <= h_max.
struct CltCovariance {
    Matrix V;
    Matrix mc_stderr;       // entrywise standard errors
    int h_max = 0;
    double tail_magnitude = 0.0;  // largest |h|=h_max term across entries
    bool truncation_warning = false;
};

/// One entry of the lag sum: Cov_{l,l'} with its standard error, the magnitude
/// of the boundary term, and the individual h-terms (indexed h + h_max, after
/// the P(w>c)^-2 prefactor). `samples` counts draws per h-term.
struct CltEntry {
    double value = 0.0;
    double stderr_value = 0.0;
    double tail_magnitude = 0.0;
    Vector h_terms;
    Vector h_stderrs;
};
CltEntry clt_covariance_entry(const CovarianceFunction& cov, double c, int ell,
                              int ell_prime, int h_max, std::int64_t samples,
                              std::uint64_t seed);

CltCovariance clt_covariance(const CovarianceFunction& cov, double c, int L, int h_max,
                             std::int64_t samples, std::uint64_t seed);

/// E[w | w > c] for w ~ N(0, sigma2): sigma phi(c/sigma) / Q(c/sigma).
double conditional_increment_mean(double sigma2, double c);

/// Algebraic inverse of lln_limit: recovers C(l) - C(l+1) for l = -L..L from a
/// prediction vector and the known difference C(0) - C(1).
Vector recover_covariance_diffs(const StochPrediction& pred, double c0_minus_c1);

}  // namespace prsa

#endif
