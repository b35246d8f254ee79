#include <CLI11.hpp>
#include <cmath>
#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include "prsa/harness.hpp"
#include "prsa/io.hpp"
#include "prsa/signals.hpp"
#include "prsa/theory_det.hpp"
#include "prsa/theory_stoch.hpp"
#include "prsa/verify.hpp"

namespace {

using prsa::Json;
using prsa::Vector;

Vector to_vector(const std::vector<double>& values) {
    Vector v(static_cast<prsa::Index>(values.size()));
    for (std::size_t i = 0; i < values.size(); ++i) v[static_cast<prsa::Index>(i)] = values[i];
    return v;
}

Json to_json_array(const std::vector<double>& values) {
    Json arr = Json::array();
    for (double v : values) arr.push_back(v);
    return arr;
}

struct SimulateTwoHarmonic {
    double amplitude = 0.0, xi1 = 0.0, xi2 = 0.0, phi1 = 0.0, phi2 = 0.0;
    std::int64_t n = 0;
    std::uint64_t seed = 0;
    std::string output;

    int run() const {
        prsa::TwoHarmonicParams params{amplitude, xi1, xi2, phi1, phi2};
        const prsa::TimeSeries series = prsa::sample_two_harmonic(params, 0, n - 1);
        prsa::write_timeseries_csv(output, series);
        prsa::write_json(output + ".meta.json",
                         Json{{"model", "two-harmonic"}, {"A", amplitude}, {"xi1", xi1},
                              {"xi2", xi2}, {"phi1", phi1}, {"phi2", phi2}, {"n", n},
                              {"seed", seed}});
        return 0;
    }
};

struct SimulateArma {
    std::vector<double> ar, ma;
    double sigma = 1.0;
    std::int64_t n = 0;
    std::uint64_t seed = 0;
    int burn_in = -1;
    std::string output;

    int run() const {
        prsa::ArmaParams params;
        params.ar = to_vector(ar);
        params.ma = to_vector(ma);
        params.sigma = sigma;
        const int burn = burn_in >= 0 ? burn_in : prsa::default_burn_in(params);
        const prsa::TimeSeries series = prsa::simulate_arma(params, n, seed, burn);
        prsa::write_timeseries_csv(output, series);
        prsa::write_json(output + ".meta.json",
                         Json{{"model", "arma"}, {"ar", to_json_array(ar)},
                              {"ma", to_json_array(ma)}, {"sigma", sigma}, {"n", n},
                              {"seed", seed}, {"burn_in", burn}});
        return 0;
    }
};

struct SimulateGaussian {
    std::string cov_path;
    std::int64_t n = 0;
    std::uint64_t seed = 0;
    std::string output;

    int run() const {
        const prsa::CovarianceFunction cov = prsa::read_covariance_csv(cov_path);
        const prsa::TimeSeries series = prsa::sample_stationary_gaussian(cov, n, seed);
        prsa::write_timeseries_csv(output, series);
        prsa::write_json(output + ".meta.json",
                         Json{{"model", "stationary-gaussian"}, {"covariance", cov_path},
                              {"k_max", cov.k_max()}, {"n", n}, {"seed", seed}});
        return 0;
    }
};

struct RunPrsa {
    std::string input, output;
    double c = 0.0;
    int L = 0;
    std::string edge_policy = "truncate";

    int run() const {
        const prsa::TimeSeries series = prsa::read_timeseries_csv(input);
        const prsa::EdgePolicy policy =
            edge_policy == "all" ? prsa::EdgePolicy::all : prsa::EdgePolicy::truncate;
        const prsa::PrsaResult result = prsa::compute_prsa(series, c, L, policy);
        prsa::write_curve_csv(output, result.z, result.window);
        prsa::write_json(output + ".meta.json",
                         Json{{"n", series.size()}, {"c", c}, {"L", L},
                              {"hinge_count_used", result.hinge_count_used},
                              {"edge_policy", edge_policy}});
        return 0;
    }
};

struct PredictDet {
    double amplitude = 0.0, xi1 = 0.0, xi2 = 0.0, c = 0.0;
    int L = 0;
    std::string output;

    int run() const {
        const prsa::DetPrediction pred = prsa::det_limit_coeffs(amplitude, xi1, xi2, c);
        Vector curve(2 * L + 1);
        for (int ell = -L; ell <= L; ++ell) curve[ell + L] = prsa::det_limit_curve(pred, ell);
        prsa::write_curve_csv(output, curve, L);
        prsa::write_json(output + ".meta.json",
                         Json{{"model", "two-harmonic-limit"}, {"A", amplitude}, {"xi1", xi1},
                              {"xi2", xi2}, {"c", c}, {"L", L}, {"B1", pred.B1},
                              {"B2", pred.B2}});
        return 0;
    }
};

struct PredictStoch {
    std::string cov_path;
    double c = 0.0;
    int L = 0;
    std::string output;

    int run() const {
        const prsa::CovarianceFunction cov = prsa::read_covariance_csv(cov_path);
        const prsa::StochPrediction pred = prsa::lln_limit_vector(cov, c, L);
        prsa::write_curve_csv(output, pred.zeta, L);
        const double d = cov(0) - cov(1);
        const double prefactor = std::exp(-c * c / (4.0 * d)) /
                                 (std::sqrt(4.0 * M_PI * d) *
                                  prsa::gaussian_tail(c / std::sqrt(2.0 * d)));
        prsa::write_json(output + ".meta.json",
                         Json{{"model", "lln-limit"}, {"covariance", cov_path}, {"c", c},
                              {"L", L}, {"c0_minus_c1", d}, {"scaling_prefactor", prefactor}});
        return 0;
    }
};

struct Zeros {
    double amplitude = 0.0, xi = 0.0;
    bool extrema = false;
    bool count = false;
    double T = 10000.0, dt = 1e-3, phi1 = 0.7, phi2 = 2.1;
    std::string output;

    int run() const {
        const double rate = extrema ? prsa::expected_extrema_rate(amplitude, xi)
                                    : prsa::expected_zero_rate(amplitude, xi);
        Json report{{"A", amplitude}, {"xi", xi}, {"kind", extrema ? "extrema" : "zeros"},
                    {"rate", rate}};
        std::cout << (extrema ? "extrema" : "zero") << " rate per unit time: " << rate << '\n';
        if (count) {
            // Count sign changes of f (or f') on a dt grid over [0, T].
            const auto f = [&](double t) {
                if (!extrema)
                    return std::cos(2.0 * M_PI * t + phi1) +
                           amplitude * std::cos(2.0 * M_PI * xi * t + phi2);
                return -std::sin(2.0 * M_PI * t + phi1) -
                       amplitude * xi * std::sin(2.0 * M_PI * xi * t + phi2);
            };
            std::int64_t zeros = 0;
            double prev = f(0.0);
            const auto steps = static_cast<std::int64_t>(T / dt);
            for (std::int64_t k = 1; k <= steps; ++k) {
                const double cur = f(k * dt);
                if (prev * cur < 0.0) ++zeros;
                prev = cur;
            }
            report["counted"] = zeros;
            report["expected"] = rate * T;
            std::cout << "counted " << zeros << " sign changes over T=" << T
                      << " (expected " << rate * T << ")\n";
        }
        if (!output.empty()) prsa::write_json(output, report);
        return 0;
    }
};

struct RecoverCov {
    std::string input, output;
    double c = 0.0;
    double c0_minus_c1 = 0.0;

    int run() const {
        const auto [zeta, L] = prsa::read_curve_csv(input);
        prsa::StochPrediction pred;
        pred.zeta = zeta;
        pred.c = c;
        pred.window = L;
        const Vector diffs = prsa::recover_covariance_diffs(pred, c0_minus_c1);
        prsa::write_cdiff_csv(output, diffs, L);
        return 0;
    }
};

struct Verify {
    std::string scenario;
    std::string output;

    int run() const {
        const prsa::ScenarioResult result = prsa::run_scenario(scenario);
        const std::string path = output.empty() ? scenario + "-report.json" : output;
        prsa::write_json(path, result.report);
        std::cout << (result.passed ? "PASS " : "FAIL ") << result.name
                  << " (report: " << path << ")\n";
        if (!result.passed) {
            for (const auto& check : result.report.value("checks", Json::array()))
                if (!check.value("passed", true))
                    std::cerr << "  failed: " << check.value("check", "") << '\n';
            return 5;
        }
        return 0;
    }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Phase-rectified signal averaging toolkit"};
    app.require_subcommand(1);

    SimulateTwoHarmonic sim_det;
    SimulateArma sim_arma;
    SimulateGaussian sim_gauss;
    RunPrsa run_prsa;
    PredictDet predict_det;
    PredictStoch predict_stoch;
    Zeros zeros;
    RecoverCov recover;
    Verify verify;

    auto* simulate = app.add_subcommand("simulate", "Generate a time series CSV");
    simulate->require_subcommand(1);
    auto* s_det = simulate->add_subcommand("two-harmonic", "Two-harmonic deterministic signal");
    s_det->add_option("--A", sim_det.amplitude, "Second-component amplitude")->required();
    s_det->add_option("--xi1", sim_det.xi1, "First frequency in (0,1)")->required();
    s_det->add_option("--xi2", sim_det.xi2, "Second frequency in (0,1)")->required();
    s_det->add_option("--phi1", sim_det.phi1, "First phase (radians)");
    s_det->add_option("--phi2", sim_det.phi2, "Second phase (radians)");
    s_det->add_option("--n", sim_det.n, "Sample count")->required();
    s_det->add_option("--seed", sim_det.seed, "Recorded in metadata (signal is deterministic)");
    s_det->add_option("--output", sim_det.output, "Output CSV path")->required();

    auto* s_arma = simulate->add_subcommand("arma", "Gaussian ARMA(p,q) simulation");
    s_arma->add_option("--ar", sim_arma.ar, "AR coefficients")->delimiter(',');
    s_arma->add_option("--ma", sim_arma.ma, "MA coefficients")->delimiter(',');
    s_arma->add_option("--sigma", sim_arma.sigma, "Innovation standard deviation");
    s_arma->add_option("--n", sim_arma.n, "Sample count")->required();
    s_arma->add_option("--seed", sim_arma.seed, "RNG seed");
    s_arma->add_option("--burn-in", sim_arma.burn_in, "Burn-in (default: model-derived)");
    s_arma->add_option("--output", sim_arma.output, "Output CSV path")->required();

    auto* s_gauss = simulate->add_subcommand("gaussian",
                                             "Stationary Gaussian path from a covariance table");
    s_gauss->add_option("--cov", sim_gauss.cov_path, "Covariance CSV (lag,value)")->required();
    s_gauss->add_option("--n", sim_gauss.n, "Sample count")->required();
    s_gauss->add_option("--seed", sim_gauss.seed, "RNG seed");
    s_gauss->add_option("--output", sim_gauss.output, "Output CSV path")->required();

    auto* c_prsa = app.add_subcommand("prsa", "Run PRSA on a time series CSV");
    c_prsa->add_option("--input", run_prsa.input, "Input CSV (index,value)")->required();
    c_prsa->add_option("--c", run_prsa.c, "Hinge threshold")->required();
    c_prsa->add_option("--L", run_prsa.L, "Half window length")->required();
    c_prsa->add_option("--edge-policy", run_prsa.edge_policy, "truncate|all")
        ->check(CLI::IsMember({"truncate", "all"}));
    c_prsa->add_option("--output", run_prsa.output, "Output CSV path")->required();

    auto* predict = app.add_subcommand("predict", "Write a predicted limit curve");
    predict->require_subcommand(1);
    auto* p_det = predict->add_subcommand("det", "Two-harmonic deterministic limit");
    p_det->add_option("--A", predict_det.amplitude, "Amplitude")->required();
    p_det->add_option("--xi1", predict_det.xi1, "First frequency")->required();
    p_det->add_option("--xi2", predict_det.xi2, "Second frequency")->required();
    p_det->add_option("--c", predict_det.c, "Hinge threshold");
    p_det->add_option("--L", predict_det.L, "Half window length")->required();
    p_det->add_option("--output", predict_det.output, "Output CSV path")->required();

    auto* p_stoch = predict->add_subcommand("stoch", "Stationary-Gaussian LLN limit");
    p_stoch->add_option("--cov", predict_stoch.cov_path, "Covariance CSV")->required();
    p_stoch->add_option("--c", predict_stoch.c, "Hinge threshold");
    p_stoch->add_option("--L", predict_stoch.L, "Half window length")->required();
    p_stoch->add_option("--output", predict_stoch.output, "Output CSV path")->required();

    auto* c_zeros = app.add_subcommand("zeros", "Zero/extrema rates of the two-harmonic model");
    c_zeros->add_option("--A", zeros.amplitude, "Amplitude")->required();
    c_zeros->add_option("--xi", zeros.xi, "Frequency ratio in (0,1)")->required();
    c_zeros->add_flag("--extrema", zeros.extrema, "Rate of extrema instead of zeros");
    c_zeros->add_flag("--count", zeros.count, "Also count sign changes numerically");
    c_zeros->add_option("--T", zeros.T, "Counting horizon");
    c_zeros->add_option("--dt", zeros.dt, "Counting step");
    c_zeros->add_option("--phi1", zeros.phi1, "First phase");
    c_zeros->add_option("--phi2", zeros.phi2, "Second phase");
    c_zeros->add_option("--output", zeros.output, "Optional JSON report path");

    auto* c_recover = app.add_subcommand("recover-cov",
                                         "Recover C(l)-C(l+1) from an LLN-limit curve");
    c_recover->add_option("--input", recover.input, "Curve CSV (ell,z)")->required();
    c_recover->add_option("--c", recover.c, "Threshold the curve was computed at")->required();
    c_recover->add_option("--c0-minus-c1", recover.c0_minus_c1, "Known C(0)-C(1)")->required();
    c_recover->add_option("--output", recover.output, "Output CSV path")->required();

    auto* c_verify = app.add_subcommand("verify", "Run a named verification scenario");
    c_verify->add_option("scenario", verify.scenario, "Scenario name")->required();
    c_verify->add_option("--output", verify.output, "Report JSON path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        if (s_det->parsed()) return sim_det.run();
        if (s_arma->parsed()) return sim_arma.run();
        if (s_gauss->parsed()) return sim_gauss.run();
        if (c_prsa->parsed()) return run_prsa.run();
        if (p_det->parsed()) return predict_det.run();
        if (p_stoch->parsed()) return predict_stoch.run();
        if (c_zeros->parsed()) return zeros.run();
        if (c_recover->parsed()) return recover.run();
        if (c_verify->parsed()) return verify.run();
    } catch (const prsa::NoHingeError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const prsa::HypothesisError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 4;
    } catch (const prsa::ModelError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const prsa::OverhangError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const prsa::HorizonError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}
