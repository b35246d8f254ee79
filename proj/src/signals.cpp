#include "prsa/signals.hpp"

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/FFT>
#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "prsa/rng.hpp"

namespace prsa {

void TwoHarmonicParams::validate() const {
    if (!(amplitude > 0.0)) throw ModelError("two-harmonic amplitude must be positive");
    if (!(xi1 > 0.0 && xi1 < 1.0)) throw ModelError("xi1 must lie in (0,1)");
    if (!(xi2 > 0.0 && xi2 < 1.0)) throw ModelError("xi2 must lie in (0,1)");
    if (xi1 == xi2) throw ModelError("xi1 and xi2 must be distinct");
    if (!std::isfinite(phi1) || !std::isfinite(phi2))
        throw ModelError("phases must be finite");
}

double ArmaParams::max_char_root() const {
    const Index p = ar.size();
    if (p == 0) return 0.0;
    // Companion matrix of z^p - ar[0] z^{p-1} - ... - ar[p-1]; its eigenvalues
    // are the characteristic roots, all inside the unit disk iff stationary.
    Matrix companion = Matrix::Zero(p, p);
    companion.row(0) = ar.transpose();
    if (p > 1) companion.block(1, 0, p - 1, p - 1).setIdentity();
    Eigen::EigenSolver<Matrix> solver(companion, /*computeEigenvectors=*/false);
    return solver.eigenvalues().cwiseAbs().maxCoeff();
}

void ArmaParams::validate() const {
    if (!(sigma > 0.0)) throw ModelError("innovation sigma must be positive");
    if (!ar.allFinite() || !ma.allFinite()) throw ModelError("ARMA coefficients must be finite");
    if (ar.size() > 0 && max_char_root() >= 1.0)
        throw ModelError("AR polynomial is not stationary (root on or inside the unit circle)");
}

int default_burn_in(const ArmaParams& params) {
    const double root = params.ar.size() > 0 ? params.max_char_root() : 0.0;
    const double factor = 1.0 / std::max(1.0 - root, 1e-6);
    const double raw = 10.0 * (params.ar.size() + params.ma.size() + 1) * factor;
    return static_cast<int>(std::min(std::ceil(raw), 1e4));
}

TimeSeries sample_two_harmonic(const TwoHarmonicParams& params, std::int64_t m_lo,
                               std::int64_t m_hi) {
    params.validate();
    if (!(m_lo < m_hi)) throw ModelError("sample_two_harmonic needs m_lo < m_hi");
    const Index n = static_cast<Index>(m_hi - m_lo + 1);
    Vector values(n);
    for (Index j = 0; j < n; ++j) {
        const double m = static_cast<double>(m_lo + j);
        values[j] = std::cos(2.0 * M_PI * params.xi1 * m + params.phi1) +
                    params.amplitude * std::cos(2.0 * M_PI * params.xi2 * m + params.phi2);
    }
    return TimeSeries(std::move(values), m_lo);
}

TimeSeries simulate_arma(const ArmaParams& params, Index n, std::uint64_t seed, int burn_in) {
    params.validate();
    if (n < 1) throw ModelError("simulate_arma needs n >= 1");
    if (burn_in < 0) throw ModelError("burn_in must be nonnegative");

    const Index p = params.ar.size();
    const Index q = params.ma.size();
    Rng rng(seed);

    std::vector<double> x_hist(p, 0.0);  // x_{t-1}, x_{t-2}, ...
    std::vector<double> e_hist(q, 0.0);
    Vector out(n);
    const Index total = burn_in + n;
    for (Index t = 0; t < total; ++t) {
        const double eps = params.sigma * rng.normal();
        double x = eps;
        for (Index i = 0; i < p; ++i) x += params.ar[i] * x_hist[i];
        for (Index j = 0; j < q; ++j) x += params.ma[j] * e_hist[j];
        for (Index i = p - 1; i > 0; --i) x_hist[i] = x_hist[i - 1];
        if (p > 0) x_hist[0] = x;
        for (Index j = q - 1; j > 0; --j) e_hist[j] = e_hist[j - 1];
        if (q > 0) e_hist[0] = eps;
        if (t >= burn_in) out[t - burn_in] = x;
    }
    return TimeSeries(std::move(out), 0);
}

TimeSeries simulate_arma(const ArmaParams& params, Index n, std::uint64_t seed) {
    return simulate_arma(params, n, seed, default_burn_in(params));
}

namespace {

// psi weights of the MA(infinity) representation, truncated once the last
// p+q+1 coefficients drop below `tol` in magnitude.
std::vector<double> ma_infinity_weights(const ArmaParams& params, double tol) {
    const Index p = params.ar.size();
    const Index q = params.ma.size();
    const Index quiet_needed = p + q + 1;
    std::vector<double> psi{1.0};
    Index quiet = 0;
    const Index cap = 1000000;
    for (Index j = 1; j <= cap; ++j) {
        double w = j <= q ? params.ma[j - 1] : 0.0;
        for (Index i = 1; i <= std::min<Index>(j, p); ++i)
            w += params.ar[i - 1] * psi[j - i];
        psi.push_back(w);
        quiet = std::abs(w) < tol ? quiet + 1 : 0;
        if (j > q && quiet >= quiet_needed) break;
        if (j == cap)
            throw ModelError("MA(infinity) expansion did not decay; model near-nonstationary");
    }
    return psi;
}

}  // namespace

CovarianceFunction arma_autocovariance(const ArmaParams& params, Index k_max) {
    params.validate();
    if (k_max < 1) throw ModelError("arma_autocovariance needs k_max >= 1");

    const Index p = params.ar.size();
    const Index q = params.ma.size();
    Vector cov = Vector::Zero(k_max + 1);

    if (p > 0 && q == 0) {
        // Yule-Walker: C(k) = sum_i a_i C(|k-i|) for k >= 1, plus the
        // variance equation C(0) = sum_i a_i C(i) + sigma^2.
        Matrix m = Matrix::Zero(p + 1, p + 1);
        Vector rhs = Vector::Zero(p + 1);
        rhs[0] = params.sigma * params.sigma;
        for (Index k = 0; k <= p; ++k) {
            m(k, k) += 1.0;
            for (Index i = 1; i <= p; ++i) {
                const Index lag = std::abs(k - i);
                m(k, lag) -= params.ar[i - 1];
            }
        }
        Vector head = m.fullPivLu().solve(rhs);
        for (Index k = 0; k <= std::min(p, k_max); ++k) cov[k] = head[k];
        for (Index k = p + 1; k <= k_max; ++k) {
            double value = 0.0;
            for (Index i = 1; i <= p; ++i) value += params.ar[i - 1] * cov[k - i];
            cov[k] = value;
        }
    } else {
        const std::vector<double> psi = ma_infinity_weights(params, 1e-14);
        const Index nw = static_cast<Index>(psi.size());
        const double s2 = params.sigma * params.sigma;
        for (Index k = 0; k <= k_max; ++k) {
            double acc = 0.0;
            for (Index j = 0; j + k < nw; ++j) acc += psi[j] * psi[j + k];
            cov[k] = s2 * acc;
        }
    }
    return CovarianceFunction(std::move(cov));
}

TimeSeries sample_stationary_gaussian(const CovarianceFunction& cov, Index n,
                                      std::uint64_t seed) {
    if (n < 2) throw ModelError("sample_stationary_gaussian needs n >= 2");
    const Index k_max = cov.k_max();

    Index m = 4;
    while (m < std::max(2 * n, 2 * (k_max + 1))) m *= 2;

    // First row of the circulant extension of the truncated covariance.
    std::vector<std::complex<double>> row(m, 0.0);
    row[0] = cov(0);
    for (Index k = 1; k <= k_max && k < m; ++k) {
        row[k] = cov(k);
        row[m - k] = cov(k);
    }

    Eigen::FFT<double> fft;
    std::vector<std::complex<double>> eig(m);
    fft.fwd(eig, row);

    double min_eig = 0.0;
    for (const auto& value : eig) min_eig = std::min(min_eig, value.real());
    if (min_eig < -1e-10 * cov(0))
        throw EmbeddingError(
            "circulant embedding has negative eigenvalues beyond tolerance; "
            "a longer padding (larger n or richer lag table) may fix this");

    // Dietrich-Newsam: y = FFT(sqrt(lambda/m) (a + i b)); the real part is an
    // exact draw from the stationary process. Normals are drawn interleaved
    // (a_k, b_k) per frequency so the stream is a pure function of the seed.
    Rng rng(seed);
    std::vector<std::complex<double>> spectrum(m);
    for (Index k = 0; k < m; ++k) {
        const double scale = std::sqrt(std::max(eig[k].real(), 0.0) / static_cast<double>(m));
        const double a = rng.normal();
        const double b = rng.normal();
        spectrum[k] = std::complex<double>(scale * a, scale * b);
    }
    std::vector<std::complex<double>> path(m);
    fft.fwd(path, spectrum);

    Vector values(n);
    for (Index i = 0; i < n; ++i) values[i] = path[i].real();
    return TimeSeries(std::move(values), 0);
}

}  // namespace prsa
