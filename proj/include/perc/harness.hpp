#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "perc/config.hpp"
#include "perc/geometry.hpp"
#include "perc/stats.hpp"

namespace perc {

enum class ExperimentKind {
    Ratio,            // E[S/L | H_n] per size
    MzScaling,        // E[L | H_n] / (n^2 pi3(n)) per size
    FiveArmExponent,  // pi5(n) per size + log-log fit
    Dmin,             // E[S | H_n], E[L | H_n] per size + log-log fits
    LowerTail,        // P(0 < L < eps n^2 pi3 | H_n) per size
    Quasimult,        // pi3(n) / (pi3(m) pi3(m,n)) over size pairs
    DetourStats,      // shielded-detour statistics + validator on annuli
};

ExperimentKind experiment_kind_from_name(const std::string& name);
std::string experiment_kind_name(ExperimentKind kind);

struct ExperimentSpec {
    ExperimentKind experiment = ExperimentKind::Ratio;
    std::vector<int> sizes;
    int64_t samples_per_size = 0;
    double p = 0.5;
    double epsilon = 0.5;
    uint64_t master_seed = 0;
    std::string output_path;  // empty = stdout
    int threads = 1;

    // sizes strictly increasing and positive; samples_per_size >= 1;
    // p in [0, 1]; epsilon in (0, 1) where the experiment uses it.
    void validate() const;  // throws std::domain_error
};

// key = value lines (experiment, sizes as comma list, samples_per_size,
// p, epsilon, master_seed, output_path, threads); '#' starts a comment.
ExperimentSpec parse_experiment_spec(const std::string& text);

struct FitResult {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    Interval slope_ci{0.0, 0.0};
    double slope_se = 0.0;           // bootstrap standard error
    std::vector<int> excluded_sizes;  // sizes dropped for nonpositive estimates
};

// One size's worth of per-sample data for a log-log fit. Either the raw
// per-sample values, or (for indicator statistics) the compressed
// successes/samples pair, which bootstraps as a binomial draw.
struct FitPoint {
    int n = 0;
    std::vector<double> values;
    int64_t successes = -1;  // >= 0 marks the indicator form
    int64_t samples = 0;

    double estimate() const;
};

// OLS of log(estimate) on log(n). Sizes with nonpositive estimates are
// excluded and listed. CI from `bootstrap` resamples of the per-sample
// data (widened if needed so that it contains the point slope).
FitResult fit_exponent(const std::vector<FitPoint>& points, uint64_t seed = 0,
                       int bootstrap = 1000);

struct ExperimentResult {
    std::vector<EstimateRecord> records;
    std::vector<std::pair<std::string, FitResult>> fits;
    int64_t validator_failures = 0;  // detour_stats only
};

// Runs the experiment described by `spec`. Deterministic for a given
// spec, independently of the thread count. Zero conditioned samples at
// some size produce a NaN estimate row, not a failure.
ExperimentResult run_experiment(const ExperimentSpec& spec);

enum class OracleStatistic {
    ELowestLen,
    EShortestLen,
    PCrossing,
    EInnermostLen,
    EShortestCircuitLen,
};

OracleStatistic oracle_statistic_from_name(const std::string& name);
std::string oracle_statistic_name(OracleStatistic s);

// Exact expectation of the statistic under independent edge states,
// p must be a dyadic double (every double is); sums statistic * p^open
// * (1-p)^closed over all 2^E configurations. Requires E <= 24.
// Crossing statistics require a box region, circuit statistics an
// annulus; mismatch or oversized region throws std::domain_error.
boost::multiprecision::cpp_rational enumerate_oracle(const Region& region,
                                                     OracleStatistic statistic, double p);

}  // namespace perc
