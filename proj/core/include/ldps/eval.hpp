#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ldps/types.hpp"

namespace ldps {

struct EvalReport {
    double error_rate = 0.0;        // r_e
    double true_association = 0.0;  // r_t
    double false_association = 0.0; // r_f
};

/// Unsupervised classification error: every learned cluster is associated
/// with the true category holding its plurality (ties to the smallest true
/// id); the error rate is the misassigned fraction.
double error_rate(std::span<const int> predicted, std::span<const int> truth);

/// Pair-counting rates: fraction of same-true pairs kept together (r_t) and
/// of different-true pairs wrongly joined (r_f). Computed from the
/// contingency table; the tests check it against direct pair enumeration.
std::pair<double, double> pairwise_association(std::span<const int> predicted,
                                               std::span<const int> truth);

EvalReport evaluate_labels(std::span<const int> predicted, std::span<const int> truth);

struct BenchmarkRecord {
    std::string method;
    double wall_time_s = 0.0;       // clustering time at the recorded repeat
    double grid_search_s = 0.0;     // parameter search time, reported separately
    std::size_t iterations = 0;     // #iter of the recorded repeat
    std::size_t repeats = 0;        // #repe: first repeat beating the reference
                                    // SSE, else the repeat achieving the best
    double best_sse = 0.0;
    std::size_t outliers_removed = 0;
};

/// Recording rule shared by the baselines: the first repeat with SSE strictly
/// below `reference_sse` wins; otherwise the first repeat attaining the
/// overall minimum.
struct RepeatOutcome {
    std::size_t repeats = 0;
    std::size_t iterations = 0;
    double best_sse = 0.0;
};
RepeatOutcome record_repeats(std::span<const double> sses,
                             std::span<const std::size_t> iterations, double reference_sse);

/// The paper-style seeding benchmark: one deterministic LDPS-means run sets
/// the reference SSE, then random-restart k-means and k-means++ run
/// sequentially up to `budget_repeats`. Rows: ldps-means, kmeans, kmeans++.
std::vector<BenchmarkRecord> benchmark_protocol(const DataMatrix& data, std::size_t k_star,
                                                std::size_t budget_repeats, std::uint64_t seed,
                                                const LdpsParams& base = {},
                                                unsigned threads = 1);

/// Closed-form expected number of random k-subset draws from k*m0 balanced
/// points until every cluster is hit exactly once: C(k*m0, k) / m0^k,
/// evaluated in log space.
double analytic_expected_repeats(std::size_t m0, std::size_t k);

struct RepeatsEstimate {
    double empirical_mean = 0.0;
    double analytic = 0.0;
};

/// Monte-Carlo counterpart of analytic_expected_repeats: repeats uniform
/// without-replacement draws of k indices until all k labels are distinct
/// and averages the draw counts over `trials`.
RepeatsEstimate seeding_repeats_monte_carlo(std::size_t m0, std::size_t k, std::size_t trials,
                                            std::uint64_t seed);

/// CSV serialization: '#' provenance line, header row, '.' decimals.
std::string to_csv(std::span<const BenchmarkRecord> records, std::string_view provenance);
std::string to_csv(const EvalReport& report, std::string_view provenance);

} // namespace ldps
