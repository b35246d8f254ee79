#include "prsa/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <thread>

#include "prsa/numerics.hpp"
#include "prsa/rng.hpp"

namespace prsa {

void ExperimentSpec::validate() const {
    if (replicates < 1) throw ModelError("experiment needs replicates >= 1");
    if (window < 1) throw ModelError("experiment needs L >= 1");
    if (n < 2 * static_cast<Index>(window) + 2)
        throw ModelError("experiment needs n >= 2L+2");
    std::visit([](const auto& model) {
        if constexpr (!std::is_same_v<std::decay_t<decltype(model)>, CovarianceFunction>)
            model.validate();
    }, signal);
}

TimeSeries make_signal(const ExperimentSpec& spec, int replicate) {
    const std::uint64_t child = derive_seed(spec.seed, static_cast<std::uint64_t>(replicate));
    if (const auto* det = std::get_if<TwoHarmonicParams>(&spec.signal))
        return sample_two_harmonic(*det, 0, spec.n - 1);
    if (const auto* arma = std::get_if<ArmaParams>(&spec.signal))
        return simulate_arma(*arma, spec.n, child);
    return sample_stationary_gaussian(std::get<CovarianceFunction>(spec.signal), spec.n, child);
}

int thread_cap() {
    int cap = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    if (const char* env = std::getenv("PRSA_THREADS")) {
        const int requested = std::atoi(env);
        if (requested >= 1) cap = std::min(cap, requested);
    }
    return cap;
}

ReplicateRun run_replicates(const ExperimentSpec& spec) {
    spec.validate();
    const int r_total = spec.replicates;

    ReplicateRun run;
    run.results.resize(r_total);
    run.child_seeds.resize(r_total);
    for (int r = 0; r < r_total; ++r)
        run.child_seeds[r] = derive_seed(spec.seed, static_cast<std::uint64_t>(r));

    // Replicates are independent; workers pull indices and write into their
    // own slot, so the reduction below is identical for any thread count.
    const int workers = std::min(thread_cap(), r_total);
    std::atomic<int> next{0};
    std::exception_ptr failure;
    std::atomic<bool> failed{false};
    auto work = [&]() {
        for (;;) {
            const int r = next.fetch_add(1);
            if (r >= r_total || failed.load()) return;
            try {
                run.results[r] = compute_prsa(make_signal(spec, r), spec.c, spec.window,
                                              spec.edge_policy);
            } catch (const NoHingeError& err) {
                if (!failed.exchange(true))
                    failure = std::make_exception_ptr(
                        NoHingeError(std::string(err.what()) + " (replicate " +
                                     std::to_string(r) + ")"));
                return;
            } catch (...) {
                if (!failed.exchange(true)) failure = std::current_exception();
                return;
            }
        }
    };
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < workers; ++t) pool.emplace_back(work);
        for (auto& thread : pool) thread.join();
    }
    if (failure) std::rethrow_exception(failure);

    const Index dim = run.results.front().z.size();
    run.pooled_mean = Vector::Zero(dim);
    for (const auto& res : run.results) run.pooled_mean += res.z;
    run.pooled_mean /= static_cast<double>(r_total);

    run.pooled_var = Vector::Zero(dim);
    if (r_total > 1) {
        for (const auto& res : run.results) {
            const Vector diff = res.z - run.pooled_mean;
            run.pooled_var += diff.cwiseProduct(diff);
        }
        run.pooled_var /= static_cast<double>(r_total - 1);
    }
    run.pooled_stderr = (run.pooled_var / static_cast<double>(r_total)).cwiseSqrt();
    return run;
}

ComparisonReport compare_curves(const Vector& empirical, const Vector& predicted) {
    if (empirical.size() != predicted.size())
        throw ModelError("compare_curves needs equal-length vectors");
    ComparisonReport report;
    report.empirical = empirical;
    report.predicted = predicted;
    report.per_ell_errors = (empirical - predicted).cwiseAbs();
    report.max_abs_error = report.per_ell_errors.maxCoeff();
    report.rmse = std::sqrt(report.per_ell_errors.squaredNorm() /
                            static_cast<double>(report.per_ell_errors.size()));
    return report;
}

ScalingReport variance_scaling_check(const ExperimentSpec& base,
                                     const std::vector<Index>& n_values) {
    if (n_values.size() < 2) throw ModelError("variance scaling needs >= 2 sample sizes");
    if (base.replicates < 100)
        throw ModelError("variance scaling needs >= 100 replicates per n");

    ScalingReport report;
    report.n_values = n_values;
    const int dim = 2 * base.window + 1;
    report.variances = Matrix::Zero(dim, static_cast<Index>(n_values.size()));
    for (std::size_t k = 0; k < n_values.size(); ++k) {
        ExperimentSpec spec = base;
        spec.n = n_values[k];
        spec.seed = derive_seed(base.seed, 1000 + k);
        const ReplicateRun run = run_replicates(spec);
        report.variances.col(static_cast<Index>(k)) = run.pooled_var;
        if (run.pooled_var.minCoeff() <= 0.0) report.degenerate = true;
    }

    report.per_ell_slopes = Vector::Zero(dim);
    if (!report.degenerate) {
        // OLS slope of log(var) on log(n), per l.
        const Index m = static_cast<Index>(n_values.size());
        Vector logn(m);
        for (Index k = 0; k < m; ++k) logn[k] = std::log(static_cast<double>(n_values[k]));
        const double mean_logn = logn.mean();
        const double denom = (logn.array() - mean_logn).square().sum();
        for (Index ell = 0; ell < dim; ++ell) {
            Vector logv = report.variances.row(ell).transpose().array().log();
            report.per_ell_slopes[ell] =
                ((logn.array() - mean_logn) * (logv.array() - logv.mean())).sum() / denom;
        }
    }
    return report;
}

NormalityResult normality_check(const Vector& samples) {
    const Index n = samples.size();
    if (n < 100) throw ModelError("normality_check needs >= 100 samples");

    NormalityResult result;
    const double mean = samples.mean();
    const double sd = std::sqrt((samples.array() - mean).square().sum() /
                                static_cast<double>(n - 1));
    if (!(sd > 1e-13 * std::max(1.0, std::abs(mean)))) {
        result.degenerate_variance = true;
        result.statistic = std::numeric_limits<double>::infinity();
        result.p_value = 0.0;
        return result;
    }

    std::vector<double> sorted(samples.data(), samples.data() + n);
    std::sort(sorted.begin(), sorted.end());
    double a2 = 0.0;
    for (Index i = 0; i < n; ++i) {
        double zi = 1.0 - gaussian_tail((sorted[i] - mean) / sd);
        double zr = 1.0 - gaussian_tail((sorted[n - 1 - i] - mean) / sd);
        zi = std::clamp(zi, 1e-300, 1.0 - 1e-16);
        zr = std::clamp(zr, 1e-300, 1.0 - 1e-16);
        a2 += (2.0 * i + 1.0) * (std::log(zi) + std::log1p(-zr));
    }
    a2 = -static_cast<double>(n) - a2 / static_cast<double>(n);

    // Case-3 small-sample adjustment and p-value bands (D'Agostino-Stephens).
    const double nn = static_cast<double>(n);
    const double a2s = a2 * (1.0 + 0.75 / nn + 2.25 / (nn * nn));
    result.statistic = a2s;
    double p;
    if (a2s >= 10.0)
        p = 3.7e-24;
    else if (a2s >= 0.6)
        p = std::exp(1.2937 - 5.709 * a2s + 0.0186 * a2s * a2s);
    else if (a2s >= 0.34)
        p = std::exp(0.9177 - 4.279 * a2s - 1.38 * a2s * a2s);
    else if (a2s >= 0.2)
        p = 1.0 - std::exp(-8.318 + 42.796 * a2s - 59.938 * a2s * a2s);
    else
        p = 1.0 - std::exp(-13.436 + 101.14 * a2s - 223.73 * a2s * a2s);
    result.p_value = std::clamp(p, 0.0, 1.0);
    return result;
}

}  // namespace prsa
