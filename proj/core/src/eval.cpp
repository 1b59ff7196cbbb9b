#include "ldps/eval.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>

#include "ldps/cluster.hpp"
#include "ldps/data.hpp"
#include "ldps/dissim.hpp"
#include "ldps/rng.hpp"

namespace ldps {

namespace {

double pairs_of(double n) { return n * (n - 1.0) / 2.0; }

double round_ms(double seconds) { return std::round(seconds * 1000.0) / 1000.0; }

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

} // namespace

double error_rate(std::span<const int> predicted, std::span<const int> truth) {
    require(predicted.size() == truth.size(), errc::label_mismatch,
            "label vectors differ in length");
    require(!predicted.empty(), errc::empty_input, "no labels to evaluate");

    // counts[learned][true], ordered maps so the smallest true id wins ties
    std::map<int, std::map<int, std::size_t>> counts;
    for (std::size_t i = 0; i < predicted.size(); ++i) ++counts[predicted[i]][truth[i]];

    std::map<int, int> association;
    for (const auto& [learned, per_true] : counts) {
        int best_true = 0;
        std::size_t best_count = 0;
        for (const auto& [true_id, count] : per_true) {
            if (count > best_count) {
                best_count = count;
                best_true = true_id;
            }
        }
        association[learned] = best_true;
    }
    std::size_t misassigned = 0;
    for (std::size_t i = 0; i < predicted.size(); ++i) {
        if (association[predicted[i]] != truth[i]) ++misassigned;
    }
    return static_cast<double>(misassigned) / static_cast<double>(predicted.size());
}

std::pair<double, double> pairwise_association(std::span<const int> predicted,
                                               std::span<const int> truth) {
    require(predicted.size() == truth.size(), errc::label_mismatch,
            "label vectors differ in length");
    require(!predicted.empty(), errc::empty_input, "no labels to evaluate");

    std::map<std::pair<int, int>, double> cells;
    std::map<int, double> per_pred;
    std::map<int, double> per_true;
    for (std::size_t i = 0; i < predicted.size(); ++i) {
        cells[{predicted[i], truth[i]}] += 1.0;
        per_pred[predicted[i]] += 1.0;
        per_true[truth[i]] += 1.0;
    }
    double same_both = 0.0;
    for (const auto& [key, n] : cells) same_both += pairs_of(n);
    double same_pred = 0.0;
    for (const auto& [key, n] : per_pred) same_pred += pairs_of(n);
    double same_true = 0.0;
    for (const auto& [key, n] : per_true) same_true += pairs_of(n);
    const double all_pairs = pairs_of(static_cast<double>(predicted.size()));

    const double true_assoc = same_true > 0.0 ? same_both / same_true : 1.0;
    const double diff_true = all_pairs - same_true;
    const double false_assoc = diff_true > 0.0 ? (same_pred - same_both) / diff_true : 0.0;
    return {true_assoc, false_assoc};
}

EvalReport evaluate_labels(std::span<const int> predicted, std::span<const int> truth) {
    EvalReport report;
    report.error_rate = error_rate(predicted, truth);
    const auto [rt, rf] = pairwise_association(predicted, truth);
    report.true_association = rt;
    report.false_association = rf;
    return report;
}

RepeatOutcome record_repeats(std::span<const double> sses,
                             std::span<const std::size_t> iterations, double reference_sse) {
    require(!sses.empty() && sses.size() == iterations.size(), errc::invalid_argument,
            "need one SSE and iteration count per repeat");
    RepeatOutcome out;
    std::size_t best = 0;
    for (std::size_t i = 0; i < sses.size(); ++i) {
        if (sses[i] < reference_sse) {
            out.repeats = i + 1;
            out.iterations = iterations[i];
            out.best_sse = *std::min_element(sses.begin(), sses.end());
            return out;
        }
        if (sses[i] < sses[best]) best = i;
    }
    out.repeats = best + 1;
    out.iterations = iterations[best];
    out.best_sse = sses[best];
    return out;
}

std::vector<BenchmarkRecord> benchmark_protocol(const DataMatrix& data, std::size_t k_star,
                                                std::size_t budget_repeats, std::uint64_t seed,
                                                const LdpsParams& base, unsigned threads) {
    data.validate();
    require(budget_repeats >= 1, errc::invalid_argument, "need at least one repeat");
    std::vector<BenchmarkRecord> records;

    const DissimilarityMatrix dissim = squared_euclidean(data, threads);

    auto start = Clock::now();
    const auto h_grid = default_bandwidth_grid();
    const auto r_grid = default_radius_grid();
    const GridSearchResult searched = grid_search_theta(dissim, h_grid, r_grid, base, threads);
    const double grid_seconds = seconds_since(start);

    LdpsParams params = base;
    params.bandwidth_scale = searched.bandwidth_scale;
    params.radius_scale = searched.radius_scale;

    start = Clock::now();
    const LdpsClusterResult ldps_run =
        ldps_means(data, dissim, k_star, params, ClusterConfig{}, threads);
    BenchmarkRecord ldps_record;
    ldps_record.method = "ldps-means";
    ldps_record.wall_time_s = round_ms(seconds_since(start));
    ldps_record.grid_search_s = round_ms(grid_seconds);
    ldps_record.iterations = ldps_run.model.iterations;
    ldps_record.repeats = 1;
    ldps_record.best_sse = ldps_run.model.sse;
    ldps_record.outliers_removed = ldps_run.outliers.size();
    records.push_back(ldps_record);
    const double reference_sse = ldps_run.model.sse;

    const auto run_baseline = [&](const std::string& name, bool plus_plus,
                                  std::uint64_t stream_offset) {
        std::vector<double> sses;
        std::vector<std::size_t> iters;
        std::vector<double> times;
        sses.reserve(budget_repeats);
        for (std::size_t repeat = 0; repeat < budget_repeats; ++repeat) {
            const std::uint64_t child = Rng::derive(seed, stream_offset + repeat);
            ClusterConfig config;
            config.seed_mode =
                plus_plus ? SeedMode::kmeans_pp(child) : SeedMode::random(child);
            const auto t = Clock::now();
            const ClusterModel model = k_means(data, k_star, config);
            times.push_back(seconds_since(t));
            sses.push_back(model.sse);
            iters.push_back(model.iterations);
        }
        const RepeatOutcome outcome = record_repeats(sses, iters, reference_sse);
        BenchmarkRecord record;
        record.method = name;
        record.wall_time_s =
            round_ms(std::accumulate(times.begin(), times.begin() + static_cast<std::ptrdiff_t>(outcome.repeats), 0.0));
        record.grid_search_s = 0.0;
        record.iterations = outcome.iterations;
        record.repeats = outcome.repeats;
        record.best_sse = outcome.best_sse;
        record.outliers_removed = 0;
        records.push_back(record);
    };
    run_baseline("kmeans", false, 0);
    run_baseline("kmeans++", true, budget_repeats);
    return records;
}

double analytic_expected_repeats(std::size_t m0, std::size_t k) {
    require(m0 >= 1 && k >= 1, errc::invalid_argument, "m0 and k must be at least 1");
    const double m = static_cast<double>(k) * static_cast<double>(m0);
    const double log_choose = std::lgamma(m + 1.0) - std::lgamma(static_cast<double>(k) + 1.0) -
                              std::lgamma(m - static_cast<double>(k) + 1.0);
    return std::exp(log_choose - static_cast<double>(k) * std::log(static_cast<double>(m0)));
}

RepeatsEstimate seeding_repeats_monte_carlo(std::size_t m0, std::size_t k, std::size_t trials,
                                            std::uint64_t seed) {
    require(trials >= 1, errc::invalid_argument, "need at least one trial");
    require(m0 >= 1 && k >= 1, errc::invalid_argument, "m0 and k must be at least 1");
    require(k * m0 <= 10000, errc::invalid_argument, "k*m0 too large to simulate");

    const std::size_t m = k * m0;
    Rng rng(seed);
    std::vector<std::size_t> pool(m);
    std::iota(pool.begin(), pool.end(), std::size_t{0});
    std::vector<bool> label_seen(k, false);
    std::vector<std::size_t> seen_list;
    seen_list.reserve(k);

    double total_draws = 0.0;
    for (std::size_t trial = 0; trial < trials; ++trial) {
        std::size_t draws = 0;
        bool success = false;
        while (!success) {
            ++draws;
            success = true;
            for (std::size_t i = 0; i < k; ++i) {
                const std::size_t j = i + rng.uniform_index(m - i);
                std::swap(pool[i], pool[j]);
                const std::size_t label = pool[i] / m0;
                if (label_seen[label]) success = false;
                else {
                    label_seen[label] = true;
                    seen_list.push_back(label);
                }
            }
            for (const std::size_t label : seen_list) label_seen[label] = false;
            seen_list.clear();
        }
        total_draws += static_cast<double>(draws);
    }

    RepeatsEstimate out;
    out.empirical_mean = total_draws / static_cast<double>(trials);
    out.analytic = analytic_expected_repeats(m0, k);
    return out;
}

std::string to_csv(std::span<const BenchmarkRecord> records, std::string_view provenance) {
    std::ostringstream out;
    if (!provenance.empty()) out << "# " << provenance << '\n';
    out << "method,time_s,grid_search_s,iterations,repeats,best_sse,outliers_removed\n";
    for (const auto& record : records) {
        out << record.method << ',' << format_double(record.wall_time_s) << ','
            << format_double(record.grid_search_s) << ',' << record.iterations << ','
            << record.repeats << ',' << format_double(record.best_sse) << ','
            << record.outliers_removed << '\n';
    }
    return out.str();
}

std::string to_csv(const EvalReport& report, std::string_view provenance) {
    std::ostringstream out;
    if (!provenance.empty()) out << "# " << provenance << '\n';
    out << "error_rate,true_association,false_association\n";
    out << format_double(report.error_rate) << ',' << format_double(report.true_association)
        << ',' << format_double(report.false_association) << '\n';
    return out.str();
}

} // namespace ldps
