#include "prsa/numerics.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Dense>
#include <algorithm>
#include <vector>

#include "prsa/rng.hpp"

namespace prsa {

namespace {

// Gauss-Legendre nodes/weights on [-1, 1], computed once by Newton iteration
// on the Legendre polynomial (symmetric, so only half the roots are solved).
struct GaussLegendre {
    static constexpr int order = 64;
    std::array<double, order> node;
    std::array<double, order> weight;

    GaussLegendre() {
        const int m = (order + 1) / 2;
        for (int i = 0; i < m; ++i) {
            double x = std::cos(M_PI * (i + 0.75) / (order + 0.5));
            double pp = 0.0;
            for (int it = 0; it < 100; ++it) {
                double p0 = 1.0, p1 = x;
                for (int k = 2; k <= order; ++k) {
                    const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                pp = order * (x * p1 - p0) / (x * x - 1.0);
                const double dx = p1 / pp;
                x -= dx;
                if (std::abs(dx) < 1e-16) break;
            }
            node[i] = -x;
            node[order - 1 - i] = x;
            weight[i] = 2.0 / ((1.0 - x * x) * pp * pp);
            weight[order - 1 - i] = weight[i];
        }
    }
};

const GaussLegendre& gl64() {
    static const GaussLegendre table;
    return table;
}

// Integral of g over [lo, hi] split into `panels` equal panels, GL64 each.
double panelled_gl(const std::function<double(double)>& g, double lo, double hi, int panels) {
    const auto& q = gl64();
    const double h = (hi - lo) / panels;
    double total = 0.0;
    for (int p = 0; p < panels; ++p) {
        const double mid = lo + (p + 0.5) * h;
        double acc = 0.0;
        for (int k = 0; k < GaussLegendre::order; ++k)
            acc += q.weight[k] * g(mid + 0.5 * h * q.node[k]);
        total += 0.5 * h * acc;
    }
    return total;
}

}  // namespace

double integrate_singular(const std::function<double(double)>& f, double a, double b,
                          const QuadratureSpec& spec) {
    spec.validate();
    if (!(a < b)) throw ModelError("integrate_singular needs a < b");

    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    // u = mid + half*sin(theta) maps [-pi/2, pi/2] onto [a, b]; the cos(theta)
    // Jacobian cancels the endpoint weight of arcsine-type integrands.
    auto g = [&](double theta) {
        const double u = mid + half * std::sin(theta);
        return f(u) * half * std::cos(theta);
    };

    double prev = panelled_gl(g, -M_PI_2, M_PI_2, 1);
    int panels = 2;
    for (int r = 0; r < spec.max_refinements; ++r) {
        const double cur = panelled_gl(g, -M_PI_2, M_PI_2, panels);
        if (std::abs(cur - prev) <= spec.abs_tol) return cur;
        prev = cur;
        panels *= 2;
    }
    throw QuadratureError("quadrature did not converge within max_refinements", prev,
                          panelled_gl(g, -M_PI_2, M_PI_2, panels));
}

void GaussianSpec::validate() const {
    if (mean.size() < 1) throw ModelError("Gaussian spec has empty mean");
    if (cov.rows() != mean.size() || cov.cols() != mean.size())
        throw ModelError("Gaussian spec covariance shape mismatch");
    const double scale = std::max(1.0, cov.cwiseAbs().maxCoeff());
    if ((cov - cov.transpose()).cwiseAbs().maxCoeff() > 1e-10 * scale)
        throw DecompositionError("covariance matrix is not symmetric");
}

Matrix mvn_sample(const GaussianSpec& spec, Index count, std::uint64_t seed,
                  double* jitter_used) {
    spec.validate();
    if (count < 1) throw ModelError("mvn_sample needs count >= 1");

    const Index d = spec.dim();
    const double diag_scale = std::max(spec.cov.diagonal().maxCoeff(), 0.0);
    const double neg_tol = 1e-10 * std::max(diag_scale, 1e-300);

    // Pivoted LDL^T; PSD inputs give nonnegative D up to roundoff. Retry with
    // a small recorded diagonal jitter before giving up.
    double jitter = 0.0;
    Matrix transform;
    for (int attempt = 0; attempt < 2; ++attempt) {
        Matrix c = spec.cov;
        if (attempt == 1) {
            jitter = 1e-12 * std::max(diag_scale, 1e-300);
            c.diagonal().array() += jitter;
        }
        Eigen::LDLT<Matrix> ldlt(c);
        Vector dvec = ldlt.vectorD();
        if (dvec.minCoeff() < -neg_tol) {
            if (attempt == 1)
                throw DecompositionError("covariance is not positive semidefinite");
            continue;
        }
        Matrix l = ldlt.matrixL();
        transform = ldlt.transpositionsP().transpose() *
                    Matrix(l * dvec.cwiseMax(0.0).cwiseSqrt().asDiagonal());
        break;
    }
    if (transform.size() == 0)
        throw DecompositionError("covariance factorization failed");
    if (jitter_used) *jitter_used = jitter;

    // Standard normals drawn column-major (sample by sample), so the output is
    // a pure function of the seed.
    Rng rng(seed);
    Matrix z(d, count);
    for (Index j = 0; j < count; ++j)
        for (Index i = 0; i < d; ++i) z(i, j) = rng.normal();

    Matrix samples = transform * z;
    samples.colwise() += spec.mean;
    return samples;
}

}  // namespace prsa
