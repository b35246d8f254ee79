#ifndef PRSA_HARNESS_HPP
#define PRSA_HARNESS_HPP

#include <cstdint>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "prsa/core.hpp"
#include "prsa/signals.hpp"
#include "prsa/types.hpp"

namespace prsa {

/// One Monte Carlo experiment: a signal model, PRSA parameters, and a
/// replicate budget. Replicate r draws its own seed derive_seed(seed, r).
struct ExperimentSpec {
    std::variant<TwoHarmonicParams, ArmaParams, CovarianceFunction> signal;
    double c = 0.0;
    int window = 0;  // L
    Index n = 0;
    int replicates = 1;
    std::uint64_t seed = 0;
    EdgePolicy edge_policy = EdgePolicy::truncate;

    void validate() const;
};

/// Generates the replicate-r realization of the experiment's signal model.
TimeSeries make_signal(const ExperimentSpec& spec, int replicate);

struct ReplicateRun {
    std::vector<PrsaResult> results;
    Vector pooled_mean;
    Vector pooled_var;     // sample variance across replicates, per l
    Vector pooled_stderr;  // stderr of the pooled mean, per l
    std::vector<std::uint64_t> child_seeds;
};

/// Runs every replicate of the experiment (in parallel up to PRSA_THREADS,
/// reduced in replicate order so output is bit-stable across thread counts).
/// No-hinge errors are rethrown annotated with the replicate index.
ReplicateRun run_replicates(const ExperimentSpec& spec);

struct ComparisonReport {
    double max_abs_error = 0.0;
    double rmse = 0.0;
    Vector per_ell_errors;
    Vector predicted;
    Vector empirical;
    std::map<std::string, std::string> metadata;
};

ComparisonReport compare_curves(const Vector& empirical, const Vector& predicted);

struct ScalingReport {
    std::vector<Index> n_values;
    Matrix variances;       // (2L+1) x n_values.size()
    Vector per_ell_slopes;  // log-log slope of variance vs n (expect -1)
    bool degenerate = false;
};

/// Replicate variance of z_n(l) across the given sample sizes plus the
/// per-l log-log slope. Each n needs >= 100 replicates.
ScalingReport variance_scaling_check(const ExperimentSpec& base,
                                     const std::vector<Index>& n_values);

struct NormalityResult {
    double statistic = 0.0;  // adjusted Anderson-Darling A*^2
    double p_value = 0.0;
    bool degenerate_variance = false;
    std::string test_name = "anderson-darling";
};

/// Anderson-Darling test against the normal with fitted mean and variance
/// (case-3 adjustment and p-values). Needs >= 100 samples.
NormalityResult normality_check(const Vector& samples);

/// Parallelism cap: min(PRSA_THREADS, hardware threads), at least 1.
int thread_cap();

}  // namespace prsa

#endif
