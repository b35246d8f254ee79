#include "prsa/theory_stoch.hpp"

#include <cmath>
#include <string>

#include "prsa/numerics.hpp"
#include "prsa/rng.hpp"

namespace prsa {

namespace {

double increments_variance(const CovarianceFunction& cov) {
    const double d = cov(0) - cov(1);
    if (!(cov(0) > 0.0) || !(d > 0.0))
        throw HypothesisError("need C(0) > 0 and C(0) > C(1)");
    return d;  // Var(w) = 2d
}

void check_horizon(const CovarianceFunction& cov, std::int64_t lag) {
    if (std::abs(lag) > cov.k_max())
        throw HorizonError("lag " + std::to_string(lag) + " beyond table horizon k_max=" +
                           std::to_string(cov.k_max()));
}

}  // namespace

double lln_limit(const CovarianceFunction& cov, double c, std::int64_t ell) {
    const double d = increments_variance(cov);
    check_horizon(cov, ell);
    check_horizon(cov, ell + 1);
    const double numer = cov(ell) - cov(ell + 1);
    return numer / std::sqrt(4.0 * M_PI * d) * std::exp(-c * c / (4.0 * d)) /
           gaussian_tail(c / std::sqrt(2.0 * d));
}

StochPrediction lln_limit_vector(const CovarianceFunction& cov, double c, int L) {
    if (L < 1) throw ModelError("lln_limit_vector needs L >= 1");
    StochPrediction pred;
    pred.c = c;
    pred.window = L;
    pred.cov = cov;
    pred.zeta = Vector::Zero(2 * L + 1);
    for (int ell = -L; ell <= L; ++ell) pred.zeta[ell + L] = lln_limit(cov, c, ell);
    return pred;
}

CltEntry clt_covariance_entry(const CovarianceFunction& cov, double c, int ell,
                              int ell_prime, int h_max, std::int64_t samples,
                              std::uint64_t seed) {
    if (h_max < 1) throw ModelError("clt_covariance needs h_max >= 1");
    if (samples < 1000) throw ModelError("clt_covariance needs samples >= 1000");
    const double d = increments_variance(cov);
    if (std::abs(cov(cov.k_max())) >= 1e-6 * cov(0))
        throw DecayError("covariance tail at k_max above 1e-6 C(0); "
                         "the rapid-decay hypothesis proxy fails");

    const double p_hinge = gaussian_tail(c / std::sqrt(2.0 * d));
    const double zeta_l = lln_limit(cov, c, ell);
    const double zeta_lp = lln_limit(cov, c, ell_prime);

    // Covariance blocks of the joint Gaussian (x_a, w_0, x_b, w_h), with
    // K drawn from the even-extended table.
    const auto cov_xx = [&](std::int64_t a, std::int64_t b) { return cov(a - b); };
    const auto cov_xw = [&](std::int64_t a, std::int64_t t) {
        return cov(a - t) - cov(a - t + 1);
    };
    const auto cov_ww = [&](std::int64_t s, std::int64_t t) {
        return 2.0 * cov(s - t) - cov(s - t - 1) - cov(s - t + 1);
    };

    CltEntry entry;
    entry.h_terms = Vector::Zero(2 * h_max + 1);
    entry.h_stderrs = Vector::Zero(2 * h_max + 1);
    double var_sum = 0.0;
    for (int h = -h_max; h <= h_max; ++h) {
        const std::int64_t a = ell;
        const std::int64_t b = static_cast<std::int64_t>(ell_prime) + h;
        GaussianSpec spec;
        spec.mean = Vector::Zero(4);
        spec.cov = Matrix(4, 4);
        spec.cov << cov_xx(a, a), cov_xw(a, 0), cov_xx(a, b), cov_xw(a, h),
                    cov_xw(a, 0), cov_ww(0, 0), cov_xw(b, 0), cov_ww(0, h),
                    cov_xx(a, b), cov_xw(b, 0), cov_xx(b, b), cov_xw(b, h),
                    cov_xw(a, h), cov_ww(0, h), cov_xw(b, h), cov_ww(h, h);

        const std::uint64_t term_seed =
            derive_seed(seed, static_cast<std::uint64_t>(h + h_max) * 0x10001ULL +
                                  static_cast<std::uint64_t>(ell + 1024) * 0x4000000ULL +
                                  static_cast<std::uint64_t>(ell_prime + 1024));
        const Matrix draws = mvn_sample(spec, samples, term_seed);

        // E[(x_l - zeta_l) 1{w_0 > c} (x_{l'+h} - zeta_{l'}) 1{w_h > c}]; both
        // factors have exact mean zero, so the product mean is the h-term.
        double sum = 0.0, sum_sq = 0.0;
        for (Index j = 0; j < samples; ++j) {
            const double g = (draws(0, j) - zeta_l) * (draws(1, j) > c ? 1.0 : 0.0) *
                             (draws(2, j) - zeta_lp) * (draws(3, j) > c ? 1.0 : 0.0);
            sum += g;
            sum_sq += g * g;
        }
        const double m = static_cast<double>(samples);
        const double mean = sum / m;
        const double var = std::max(sum_sq / m - mean * mean, 0.0);
        entry.value += mean;
        var_sum += var / m;
        entry.h_terms[h + h_max] = mean;
        entry.h_stderrs[h + h_max] = std::sqrt(var / m);
        if (std::abs(h) == h_max)
            entry.tail_magnitude = std::max(entry.tail_magnitude, std::abs(mean));
    }

    const double prefactor = 1.0 / (p_hinge * p_hinge);
    entry.value *= prefactor;
    entry.stderr_value = prefactor * std::sqrt(var_sum);
    entry.tail_magnitude *= prefactor;
    entry.h_terms *= prefactor;
    entry.h_stderrs *= prefactor;
    return entry;
}

CltCovariance clt_covariance(const CovarianceFunction& cov, double c, int L, int h_max,
                             std::int64_t samples, std::uint64_t seed) {
    if (L < 0) throw ModelError("clt_covariance needs L >= 0");
    const int dim = 2 * L + 1;
    CltCovariance out;
    out.h_max = h_max;
    out.V = Matrix::Zero(dim, dim);
    out.mc_stderr = Matrix::Zero(dim, dim);
    for (int ell = -L; ell <= L; ++ell) {
        for (int ell_prime = -L; ell_prime <= L; ++ell_prime) {
            const CltEntry entry =
                clt_covariance_entry(cov, c, ell, ell_prime, h_max, samples, seed);
            out.V(ell + L, ell_prime + L) = entry.value;
            out.mc_stderr(ell + L, ell_prime + L) = entry.stderr_value;
            out.tail_magnitude = std::max(out.tail_magnitude, entry.tail_magnitude);
        }
    }
    const double diag_scale = out.V.diagonal().cwiseAbs().maxCoeff();
    out.truncation_warning = out.tail_magnitude > 1e-3 * std::max(diag_scale, 1e-300);
    return out;
}

double conditional_increment_mean(double sigma2, double c) {
    if (!(sigma2 > 0.0)) throw ModelError("sigma2 must be positive");
    const double sigma = std::sqrt(sigma2);
    return sigma * gaussian_pdf(c / sigma) / gaussian_tail(c / sigma);
}

Vector recover_covariance_diffs(const StochPrediction& pred, double c0_minus_c1) {
    if (!(c0_minus_c1 > 0.0)) throw ModelError("c0_minus_c1 must be positive");
    const double d = c0_minus_c1;
    const double scale = std::sqrt(4.0 * M_PI * d) * std::exp(pred.c * pred.c / (4.0 * d)) *
                         gaussian_tail(pred.c / std::sqrt(2.0 * d));
    return pred.zeta * scale;
}

}  // namespace prsa
