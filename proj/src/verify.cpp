#include "prsa/verify.hpp"

#include <cmath>
#include <cstdlib>
#include <functional>
#include <map>

#include "prsa/harness.hpp"
#include "prsa/numerics.hpp"
#include "prsa/rng.hpp"
#include "prsa/signals.hpp"
#include "prsa/theory_det.hpp"
#include "prsa/theory_stoch.hpp"

namespace prsa {

namespace {

// PRSA_EXTENDED=1 swaps the desk-scale n = 1e6 for the full-scale 8e6 runs;
// tolerances are identical.
Index long_run_n() {
    const char* env = std::getenv("PRSA_EXTENDED");
    return (env && env[0] == '1') ? 8000000 : 1000000;
}

Json to_json(const Vector& v) {
    Json arr = Json::array();
    for (Index i = 0; i < v.size(); ++i) arr.push_back(v[i]);
    return arr;
}

Json comparison_json(const ComparisonReport& report) {
    return Json{{"predicted", to_json(report.predicted)},
                {"empirical", to_json(report.empirical)},
                {"per_ell_errors", to_json(report.per_ell_errors)},
                {"max_abs_error", report.max_abs_error},
                {"rmse", report.rmse}};
}

struct CheckList {
    Json checks = Json::array();
    bool all_passed = true;

    void add(const std::string& label, double value, double bound) {
        const bool ok = value <= bound;
        checks.push_back({{"check", label}, {"value", value}, {"bound", bound}, {"passed", ok}});
        all_passed = all_passed && ok;
    }
    void add_interval(const std::string& label, double value, double lo, double hi) {
        const bool ok = value >= lo && value <= hi;
        checks.push_back(
            {{"check", label}, {"value", value}, {"low", lo}, {"high", hi}, {"passed", ok}});
        all_passed = all_passed && ok;
    }
};

ArmaParams benchmark_arma21() {
    ArmaParams params;
    params.ar = Vector(2);
    params.ar << 0.01, 0.15;
    params.ma = Vector(1);
    params.ma << -0.15;
    params.sigma = 1.0;
    return params;
}

CovarianceFunction white_noise_table(Index k_max) {
    Vector values = Vector::Zero(k_max + 1);
    values[0] = 1.0;
    return CovarianceFunction(std::move(values));
}

TimeSeries gaussian_random_walk(Index n, std::uint64_t seed) {
    Rng rng(seed);
    Vector values(n);
    double level = 0.0;
    for (Index i = 0; i < n; ++i) {
        level += rng.normal();
        values[i] = level;
    }
    return TimeSeries(std::move(values), 0);
}

Index count_sign_changes(double amplitude, double xi, double phi1, double phi2, double T,
                         double dt) {
    const auto f = [&](double t) {
        return std::cos(2.0 * M_PI * t + phi1) + amplitude * std::cos(2.0 * M_PI * xi * t + phi2);
    };
    Index zeros = 0;
    double prev = f(0.0);
    const Index steps = static_cast<Index>(T / dt);
    for (Index k = 1; k <= steps; ++k) {
        const double cur = f(k * dt);
        if (prev * cur < 0.0) ++zeros;
        prev = cur;
    }
    return zeros;
}

// --- scenarios ------------------------------------------------------------

ScenarioResult scenario_det_two_harmonic() {
    TwoHarmonicParams params;
    params.amplitude = 0.7;
    params.xi1 = std::sqrt(2.0) / 8.0;
    params.xi2 = std::sqrt(3.0) / 4.0;
    params.phi1 = 0.3;
    params.phi2 = 1.1;
    const Index n = long_run_n();
    const int L = 20;
    const double tol = 0.02;

    const TimeSeries series = sample_two_harmonic(params, 0, n - 1);
    const PrsaResult z = compute_prsa(series, 0.0, L);
    const DetPrediction pred = det_limit_coeffs(params.amplitude, params.xi1, params.xi2, 0.0);
    Vector curve(2 * L + 1);
    for (int ell = -L; ell <= L; ++ell) curve[ell + L] = det_limit_curve(pred, ell);
    const ComparisonReport report = compare_curves(z.z, curve);

    ScenarioResult out;
    out.name = "det-two-harmonic";
    out.passed = report.max_abs_error <= tol;
    out.report = comparison_json(report);
    out.report["spec"] = {{"model", "two-harmonic"}, {"A", params.amplitude},
                          {"xi1", params.xi1},       {"xi2", params.xi2},
                          {"phi1", params.phi1},     {"phi2", params.phi2},
                          {"c", 0.0},                {"n", n},
                          {"L", L}};
    out.report["B1"] = pred.B1;
    out.report["B2"] = pred.B2;
    out.report["tolerance"] = tol;
    return out;
}

ScenarioResult scenario_quadrature_oracle() {
    const std::uint64_t seed = 0x5EED0002;
    const std::int64_t samples = 10000000;
    const double amplitudes[] = {0.3, 0.7, 1.2, 2.0, 3.0};
    const std::pair<double, double> freqs[] = {{0.17678, 0.43301}, {0.3, 0.77}};
    const double thresholds[] = {0.0, 0.4};

    CheckList checks;
    Json grid = Json::array();
    int point = 0;
    for (double amplitude : amplitudes) {
        for (const auto& [xi1, xi2] : freqs) {
            for (double c : thresholds) {
                const DetPrediction quad = det_limit_coeffs(amplitude, xi1, xi2, c);
                const McDetCoeffs mc = mc_det_limit_coeffs(amplitude, xi1, xi2, c, samples,
                                                           derive_seed(seed, point));
                checks.add("B1 grid point " + std::to_string(point),
                           std::abs(quad.B1 - mc.B1), 3.0 * mc.B1_stderr);
                checks.add("B2 grid point " + std::to_string(point),
                           std::abs(quad.B2 - mc.B2), 3.0 * mc.B2_stderr);
                grid.push_back({{"A", amplitude}, {"xi1", xi1}, {"xi2", xi2}, {"c", c},
                                {"B1_quad", quad.B1}, {"B1_mc", mc.B1},
                                {"B1_stderr", mc.B1_stderr}, {"B2_quad", quad.B2},
                                {"B2_mc", mc.B2}, {"B2_stderr", mc.B2_stderr}});
                ++point;
            }
        }
    }

    ScenarioResult out;
    out.name = "quadrature-oracle";
    out.passed = checks.all_passed;
    out.report = {{"spec", {{"grid_points", point}, {"samples", samples}}},
                  {"grid", grid},
                  {"checks", checks.checks},
                  {"seeds", {{"master", seed}, {"grid_points", "derive_seed(master, point)"}}}};
    return out;
}

ScenarioResult scenario_lln_white() {
    const std::uint64_t seed = 0x5EED0003;
    const Index n = long_run_n();
    const int L = 10;
    const double tol = 0.01;
    const CovarianceFunction cov = white_noise_table(L + 1);

    const TimeSeries series = sample_stationary_gaussian(cov, n, seed);
    const PrsaResult z = compute_prsa(series, 0.0, L);
    const StochPrediction pred = lln_limit_vector(cov, 0.0, L);
    const ComparisonReport report = compare_curves(z.z, pred.zeta);

    const double root_pi_inv = 1.0 / std::sqrt(M_PI);
    CheckList checks;
    checks.add("|z(0) - 1/sqrt(pi)|", std::abs(z.at(0) - root_pi_inv), tol);
    checks.add("|z(-1) + 1/sqrt(pi)|", std::abs(z.at(-1) + root_pi_inv), tol);
    double off = 0.0;
    for (int ell = -L; ell <= L; ++ell)
        if (ell != 0 && ell != -1) off = std::max(off, std::abs(z.at(ell)));
    checks.add("max |z(ell)| off the step", off, tol);

    ScenarioResult out;
    out.name = "lln-white";
    out.passed = checks.all_passed;
    out.report = comparison_json(report);
    out.report["spec"] = {{"model", "white-noise"}, {"n", n}, {"L", L}, {"c", 0.0},
                          {"seed", seed}};
    out.report["checks"] = checks.checks;
    out.report["tolerance"] = tol;
    out.report["seeds"] = {{"master", seed}};
    return out;
}

ScenarioResult scenario_lln_arma() {
    const std::uint64_t seed = 0x5EED0004;
    const Index n = long_run_n();
    const int L = 20;
    const double tol = 0.01;
    const ArmaParams params = benchmark_arma21();

    const CovarianceFunction cov = arma_autocovariance(params, 2 * L + 4);
    const StochPrediction pred = lln_limit_vector(cov, 0.0, L);
    const TimeSeries series = simulate_arma(params, n, seed);
    const PrsaResult z = compute_prsa(series, 0.0, L);
    const ComparisonReport report = compare_curves(z.z, pred.zeta);

    ScenarioResult out;
    out.name = "lln-arma";
    out.passed = report.max_abs_error <= tol;
    out.report = comparison_json(report);
    out.report["spec"] = {{"model", "arma"}, {"ar", {0.01, 0.15}}, {"ma", {-0.15}},
                          {"sigma", 1.0},    {"n", n},             {"L", L},
                          {"c", 0.0},        {"seed", seed}};
    out.report["tolerance"] = tol;
    out.report["seeds"] = {{"master", seed}};
    return out;
}

ScenarioResult scenario_c_scaling() {
    const std::uint64_t seed = 0x5EED0005;
    const Index n = long_run_n();
    const int L = 10;
    const double tol = 0.03;
    const double thresholds[] = {-1.0, 0.0, 1.0};

    const TimeSeries series = simulate_arma(benchmark_arma21(), n, seed);
    std::vector<Vector> normalized;
    for (double c : thresholds) {
        const PrsaResult z = compute_prsa(series, c, L);
        normalized.push_back(z.z / z.at(0));
    }

    CheckList checks;
    for (std::size_t i = 0; i < normalized.size(); ++i)
        for (std::size_t j = i + 1; j < normalized.size(); ++j)
            checks.add("normalized curves c=" + std::to_string(thresholds[i]) + " vs c=" +
                           std::to_string(thresholds[j]),
                       (normalized[i] - normalized[j]).cwiseAbs().maxCoeff(), tol);

    ScenarioResult out;
    out.name = "c-scaling";
    out.passed = checks.all_passed;
    out.report = {{"spec", {{"model", "arma"}, {"n", n}, {"L", L}, {"seed", seed},
                            {"thresholds", {-1.0, 0.0, 1.0}}}},
                  {"normalized_c_minus1", to_json(normalized[0])},
                  {"normalized_c_0", to_json(normalized[1])},
                  {"normalized_c_plus1", to_json(normalized[2])},
                  {"checks", checks.checks},
                  {"tolerance", tol},
                  {"seeds", {{"master", seed}}}};
    return out;
}

ScenarioResult scenario_clt_scaling() {
    ExperimentSpec spec;
    spec.signal = ArmaParams{};  // white noise
    spec.c = 0.0;
    spec.window = 5;
    spec.replicates = 200;
    spec.seed = 0x5EED0006;

    spec.n = 10000;
    const ReplicateRun small = run_replicates(spec);
    spec.n = 40000;
    spec.seed = derive_seed(0x5EED0006, 1);
    const ReplicateRun big = run_replicates(spec);

    const double ratio = small.pooled_var[spec.window] / big.pooled_var[spec.window];
    CheckList checks;
    checks.add_interval("variance ratio n=1e4 over n=4e4 at ell=0", ratio, 2.8, 5.7);

    ScenarioResult out;
    out.name = "clt-scaling";
    out.passed = checks.all_passed;
    out.report = {{"spec", {{"model", "white-noise"}, {"replicates", 200}, {"L", spec.window},
                            {"c", 0.0}, {"n_values", {10000, 40000}}, {"seed", 0x5EED0006}}},
                  {"scaling", {{"var_small_n", small.pooled_var[spec.window]},
                               {"var_big_n", big.pooled_var[spec.window]},
                               {"ratio", ratio},
                               {"nominal", 4.0}}},
                  {"checks", checks.checks},
                  {"seeds", {{"master", 0x5EED0006}, {"replicates", "derive_seed(master, r)"}}}};
    return out;
}

ScenarioResult scenario_clt_normality() {
    const std::uint64_t seed = 0x5EED0007;
    const Index n = 10000;
    const int replicates = 500;
    const int L = 5;

    ExperimentSpec spec;
    spec.signal = ArmaParams{};
    spec.c = 0.0;
    spec.window = L;
    spec.n = n;
    spec.replicates = replicates;
    spec.seed = seed;
    const ReplicateRun run = run_replicates(spec);

    const CovarianceFunction cov = white_noise_table(L + 1);
    const double zeta0 = lln_limit(cov, 0.0, 0);
    const double scale = std::sqrt(static_cast<double>(n));
    Vector scaled(replicates);
    for (int r = 0; r < replicates; ++r) scaled[r] = scale * (run.results[r].at(0) - zeta0);

    const NormalityResult normality = normality_check(scaled);
    const double emp_var =
        (scaled.array() - scaled.mean()).square().sum() / static_cast<double>(replicates - 1);
    const CltEntry v00 = clt_covariance_entry(cov, 0.0, 0, 0, 6, 2000000,
                                              derive_seed(seed, 99));

    CheckList checks;
    checks.add("normality p-value shortfall (0.01 - p)", 0.01 - normality.p_value, 0.0);
    checks.add("replicate variance vs V(0,0) relative gap",
               std::abs(emp_var - v00.value) / v00.value, 0.25);

    ScenarioResult out;
    out.name = "clt-normality";
    out.passed = checks.all_passed;
    out.report = {{"spec", {{"model", "white-noise"}, {"replicates", replicates}, {"n", n},
                            {"L", L}, {"c", 0.0}, {"seed", seed}}},
                  {"normality", {{"test", normality.test_name},
                                 {"statistic", normality.statistic},
                                 {"p_value", normality.p_value}}},
                  {"replicate_variance", emp_var},
                  {"clt_covariance_00", v00.value},
                  {"clt_covariance_00_stderr", v00.stderr_value},
                  {"checks", checks.checks},
                  {"seeds", {{"master", seed}, {"replicates", "derive_seed(master, r)"}}}};
    return out;
}

ScenarioResult scenario_lemma_identity() {
    const std::uint64_t seed = 0x5EED0008;
    const Index n = 2001;
    const int L = 5;
    const int series_count = 100;
    const double thresholds[] = {-0.5, 0.0, 0.5};
    const double tol = 1e-9;

    double worst = 0.0;
    for (int s = 0; s < series_count; ++s) {
        const TimeSeries series = simulate_arma(ArmaParams{}, n, derive_seed(seed, s));
        for (double c : thresholds) {
            const PrsaResult direct = prsa_centered_average(series, c, L);
            const PrsaResult increments = prsa_via_increments(series, c, L);
            const double dev = (increments.z - direct.z).cwiseAbs().maxCoeff() /
                               std::max(1.0, direct.z.cwiseAbs().maxCoeff());
            worst = std::max(worst, dev);
        }
    }

    CheckList checks;
    checks.add("max relative deviation increments vs direct", worst, tol);

    ScenarioResult out;
    out.name = "lemma-identity";
    out.passed = checks.all_passed;
    out.report = {{"spec", {{"series", series_count}, {"length", n}, {"L", L},
                            {"thresholds", {-0.5, 0.0, 0.5}}, {"seed", seed}}},
                  {"max_relative_deviation", worst},
                  {"checks", checks.checks},
                  {"tolerance", tol},
                  {"seeds", {{"master", seed}, {"series", "derive_seed(master, s)"}}}};
    return out;
}

ScenarioResult scenario_zero_count() {
    const double T = 10000.0;
    const double dt = 1e-3;
    const double phi1 = 0.7, phi2 = 2.1;

    struct Case {
        double amplitude, xi;
    };
    // The intermediate-regime point needs an irrational frequency: the count
    // equidistributes only when xi is irrational, so the third case runs near
    // 0.45 at an irrational derived from sqrt(2).
    const Case cases[] = {{0.5, 0.3}, {3.0, 0.5}, {1.3, 0.32 * std::sqrt(2.0)}};

    CheckList checks;
    Json detail = Json::array();
    for (const Case& kase : cases) {
        const double rate = expected_zero_rate(kase.amplitude, kase.xi);
        const Index zeros = count_sign_changes(kase.amplitude, kase.xi, phi1, phi2, T, dt);
        const double expected = rate * T;
        checks.add("zero count A=" + std::to_string(kase.amplitude) + " xi=" +
                       std::to_string(kase.xi),
                   std::abs(static_cast<double>(zeros) - expected), 0.01 * expected);
        detail.push_back({{"A", kase.amplitude}, {"xi", kase.xi}, {"rate", rate},
                          {"counted", zeros}, {"expected", expected}});
    }

    ScenarioResult out;
    out.name = "zero-count";
    out.passed = checks.all_passed;
    out.report = {{"spec", {{"T", T}, {"dt", dt}, {"phi1", phi1}, {"phi2", phi2}}},
                  {"cases", detail},
                  {"checks", checks.checks}};
    return out;
}

ScenarioResult scenario_random_walk() {
    const std::uint64_t seed = 0x5EED000A;
    const Index n = 100000;
    const int L = 5;
    const double tol = 0.02;

    const TimeSeries walk = gaussian_random_walk(n, seed);
    const PrsaResult z = compute_prsa(walk, 0.0, L);
    const double jump = z.at(0) - z.at(-1);
    const double expected_jump = std::sqrt(2.0 / M_PI);

    CheckList checks;
    checks.add("|jump - sqrt(2/pi)|", std::abs(jump - expected_jump), tol);
    for (int ell = -L; ell <= L - 1; ++ell) {
        if (ell == -1) continue;
        checks.add("|z(" + std::to_string(ell + 1) + ") - z(" + std::to_string(ell) + ")|",
                   std::abs(z.at(ell + 1) - z.at(ell)), tol);
    }

    ScenarioResult out;
    out.name = "random-walk";
    out.passed = checks.all_passed;
    out.report = {{"spec", {{"model", "gaussian-random-walk"}, {"n", n}, {"L", L}, {"c", 0.0},
                            {"seed", seed}}},
                  {"empirical", to_json(z.z)},
                  {"jump", jump},
                  {"expected_jump", expected_jump},
                  {"checks", checks.checks},
                  {"tolerance", tol},
                  {"seeds", {{"master", seed}}}};
    return out;
}

ScenarioResult scenario_covariance_recovery() {
    const int L = 10;
    const double tol = 1e-12;
    const double thresholds[] = {0.0, 0.8};

    ArmaParams ar1;
    ar1.ar = Vector(1);
    ar1.ar << 0.5;
    const CovarianceFunction tables[] = {arma_autocovariance(ar1, 25), white_noise_table(25)};
    const char* labels[] = {"ar1-phi-0.5", "white-noise"};

    CheckList checks;
    for (int t = 0; t < 2; ++t) {
        const CovarianceFunction& cov = tables[t];
        for (double c : thresholds) {
            const StochPrediction pred = lln_limit_vector(cov, c, L);
            const Vector recovered = recover_covariance_diffs(pred, cov(0) - cov(1));
            double worst = 0.0;
            for (int ell = -L; ell <= L; ++ell) {
                const double expected = cov(ell) - cov(ell + 1);
                worst = std::max(worst, std::abs(recovered[ell + L] - expected) /
                                            std::max(1.0, std::abs(expected)));
            }
            checks.add(std::string("round trip ") + labels[t] + " c=" + std::to_string(c),
                       worst, tol);
        }
    }

    ScenarioResult out;
    out.name = "covariance-recovery";
    out.passed = checks.all_passed;
    out.report = {{"spec", {{"tables", {"ar1-phi-0.5", "white-noise"}}, {"L", L},
                            {"thresholds", {0.0, 0.8}}}},
                  {"checks", checks.checks},
                  {"tolerance", tol}};
    return out;
}

}  // namespace

const std::vector<std::string>& scenario_names() {
    static const std::vector<std::string> names = {
        "det-two-harmonic", "quadrature-oracle", "lln-white",      "lln-arma",
        "c-scaling",        "clt-scaling",       "clt-normality",  "lemma-identity",
        "zero-count",       "random-walk",       "covariance-recovery"};
    return names;
}

ScenarioResult run_scenario(const std::string& name) {
    using Runner = std::function<ScenarioResult()>;
    static const std::map<std::string, Runner> registry = {
        {"det-two-harmonic", scenario_det_two_harmonic},
        {"quadrature-oracle", scenario_quadrature_oracle},
        {"lln-white", scenario_lln_white},
        {"lln-arma", scenario_lln_arma},
        {"c-scaling", scenario_c_scaling},
        {"clt-scaling", scenario_clt_scaling},
        {"clt-normality", scenario_clt_normality},
        {"lemma-identity", scenario_lemma_identity},
        {"zero-count", scenario_zero_count},
        {"random-walk", scenario_random_walk},
        {"covariance-recovery", scenario_covariance_recovery},
    };
    const auto it = registry.find(name);
    if (it == registry.end()) throw ModelError("unknown verification scenario: " + name);
    ScenarioResult result = it->second();
    result.report["scenario"] = result.name;
    result.report["passed"] = result.passed;
    return result;
}

}  // namespace prsa
