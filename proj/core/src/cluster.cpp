#include "ldps/cluster.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "ldps/dissim.hpp"
#include "ldps/rng.hpp"

namespace ldps {

namespace {

double squared_distance(std::span<const double> a, std::span<const double> b) {
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double diff = a[i] - b[i];
        sum += diff * diff;
    }
    return sum;
}

std::vector<std::size_t> random_distinct_indices(std::size_t m, std::size_t k,
                                                 std::uint64_t seed) {
    Rng rng(seed);
    std::vector<std::size_t> pool(m);
    std::iota(pool.begin(), pool.end(), std::size_t{0});
    for (std::size_t i = 0; i < k; ++i) {
        const std::size_t j = i + rng.uniform_index(m - i);
        std::swap(pool[i], pool[j]);
    }
    pool.resize(k);
    return pool;
}

std::vector<std::size_t> initial_indices(std::size_t m, std::size_t k, const SeedMode& mode,
                                         const DataMatrix* data) {
    switch (mode.kind) {
    case SeedMode::Kind::random:
        return random_distinct_indices(m, k, mode.seed);
    case SeedMode::Kind::kmeans_pp:
        require(data != nullptr, errc::invalid_argument,
                "k-means++ seeding needs coordinates");
        return kmeans_pp_seeds(*data, k, mode.seed);
    case SeedMode::Kind::explicit_indices: {
        require(mode.indices.size() == k, errc::invalid_argument,
                "explicit seed count does not match k");
        std::vector<bool> seen(m, false);
        for (const std::size_t idx : mode.indices) {
            require(idx < m, errc::invalid_argument, "explicit seed index out of range");
            require(!seen[idx], errc::invalid_argument, "explicit seed indices must be distinct");
            seen[idx] = true;
        }
        return mode.indices;
    }
    }
    fail(errc::invalid_argument, "unknown seed mode");
}

// Moves the point farthest from its current center into each empty cluster.
// `dist` holds each point's distance to its assigned center; repaired points
// are marked so a later empty cluster cannot steal them back.
void repair_empty_clusters(std::vector<int>& assignments, std::vector<double>& dist,
                           std::vector<std::size_t>& sizes) {
    for (std::size_t e = 0; e < sizes.size(); ++e) {
        if (sizes[e] != 0) continue;
        std::size_t farthest = assignments.size();
        double best = -1.0;
        for (std::size_t i = 0; i < assignments.size(); ++i) {
            if (sizes[static_cast<std::size_t>(assignments[i])] < 2) continue;
            if (dist[i] > best) {
                best = dist[i];
                farthest = i;
            }
        }
        require(farthest < assignments.size(), errc::invalid_argument,
                "cannot repair empty cluster");
        --sizes[static_cast<std::size_t>(assignments[farthest])];
        assignments[farthest] = static_cast<int>(e);
        sizes[e] = 1;
        dist[farthest] = -1.0;
    }
}

} // namespace

std::vector<int> assign_to_centers(const DataMatrix& data, const DataMatrix& centers) {
    require(centers.rows() >= 1, errc::invalid_argument, "need at least one center");
    require(centers.cols() == data.cols(), errc::invalid_argument,
            "center dimensionality mismatch");
    std::vector<int> assignments(data.rows());
    for (std::size_t i = 0; i < data.rows(); ++i) {
        const auto x = data.row(i);
        int best = 0;
        double best_d = squared_distance(x, centers.row(0));
        for (std::size_t c = 1; c < centers.rows(); ++c) {
            const double d = squared_distance(x, centers.row(c));
            if (d < best_d) {
                best_d = d;
                best = static_cast<int>(c);
            }
        }
        assignments[i] = best;
    }
    return assignments;
}

std::vector<int> assign_to_medoids(const DissimilarityMatrix& dissim,
                                   std::span<const std::size_t> medoids) {
    require(!medoids.empty(), errc::invalid_argument, "need at least one medoid");
    std::vector<int> assignments(dissim.size());
    for (std::size_t i = 0; i < dissim.size(); ++i) {
        const auto row = dissim.row(i);
        int best = 0;
        double best_d = row[medoids[0]];
        for (std::size_t c = 1; c < medoids.size(); ++c) {
            const double d = row[medoids[c]];
            if (d < best_d) {
                best_d = d;
                best = static_cast<int>(c);
            }
        }
        assignments[i] = best;
    }
    return assignments;
}

DataMatrix update_means(const DataMatrix& data, std::span<const int> assignments, std::size_t k) {
    require(assignments.size() == data.rows(), errc::invalid_argument,
            "assignment size mismatch");
    DataMatrix centers(k, data.cols());
    std::vector<std::size_t> counts(k, 0);
    for (std::size_t i = 0; i < data.rows(); ++i) {
        const auto c = static_cast<std::size_t>(assignments[i]);
        require(c < k, errc::invalid_argument, "assignment index out of range");
        ++counts[c];
        const auto x = data.row(i);
        auto center = centers.row(c);
        for (std::size_t a = 0; a < x.size(); ++a) center[a] += x[a];
    }
    for (std::size_t c = 0; c < k; ++c) {
        require(counts[c] > 0, errc::invalid_argument,
                "cluster " + std::to_string(c) + " is empty");
        auto center = centers.row(c);
        for (double& v : center) v /= static_cast<double>(counts[c]);
    }
    return centers;
}

std::vector<std::size_t> update_medoids(const DissimilarityMatrix& dissim,
                                        std::span<const int> assignments, std::size_t k) {
    require(assignments.size() == dissim.size(), errc::invalid_argument,
            "assignment size mismatch");
    std::vector<std::vector<std::size_t>> members(k);
    for (std::size_t i = 0; i < assignments.size(); ++i) {
        const auto c = static_cast<std::size_t>(assignments[i]);
        require(c < k, errc::invalid_argument, "assignment index out of range");
        members[c].push_back(i);
    }
    std::vector<std::size_t> medoids(k);
    for (std::size_t c = 0; c < k; ++c) {
        require(!members[c].empty(), errc::invalid_argument,
                "cluster " + std::to_string(c) + " is empty");
        std::size_t best = members[c][0];
        double best_cost = std::numeric_limits<double>::infinity();
        for (const std::size_t candidate : members[c]) {
            const auto row = dissim.row(candidate);
            double cost = 0.0;
            for (const std::size_t other : members[c]) cost += row[other];
            if (cost < best_cost) {
                best_cost = cost;
                best = candidate;
            }
        }
        medoids[c] = best;
    }
    return medoids;
}

std::vector<std::size_t> kmeans_pp_seeds(const DataMatrix& data, std::size_t k,
                                         std::uint64_t seed) {
    data.validate();
    const std::size_t m = data.rows();
    require(k <= m, errc::k_too_large, "k exceeds the number of points");
    require(k >= 1, errc::invalid_argument, "k must be at least 1");
    Rng rng(seed);
    std::vector<std::size_t> seeds;
    seeds.reserve(k);
    std::vector<bool> chosen(m, false);

    const std::size_t first = rng.uniform_index(m);
    seeds.push_back(first);
    chosen[first] = true;
    std::vector<double> min_sq(m);
    for (std::size_t i = 0; i < m; ++i) min_sq[i] = squared_distance(data.row(i), data.row(first));

    while (seeds.size() < k) {
        double total = 0.0;
        for (const double w : min_sq) total += w;
        std::size_t next = m;
        if (total > 0.0) {
            const double target = rng.uniform01() * total;
            double cumulative = 0.0;
            std::size_t last_positive = m;
            for (std::size_t i = 0; i < m; ++i) {
                if (min_sq[i] <= 0.0) continue;
                cumulative += min_sq[i];
                last_positive = i;
                if (cumulative > target) {
                    next = i;
                    break;
                }
            }
            if (next == m) next = last_positive;  // rounding pushed target past the sum
        }
        if (next == m) {
            // all remaining points coincide with chosen seeds
            for (std::size_t i = 0; i < m; ++i) {
                if (!chosen[i]) {
                    next = i;
                    break;
                }
            }
        }
        seeds.push_back(next);
        chosen[next] = true;
        for (std::size_t i = 0; i < m; ++i) {
            min_sq[i] = std::min(min_sq[i], squared_distance(data.row(i), data.row(next)));
        }
    }
    return seeds;
}

ClusterModel k_means(const DataMatrix& data, std::size_t k, const ClusterConfig& config) {
    data.validate();
    const std::size_t m = data.rows();
    require(k <= m, errc::k_too_large, "k exceeds the number of points");
    require(k >= 1, errc::invalid_argument, "k must be at least 1");
    require(config.max_iterations >= 1 && config.rel_sse_tolerance >= 0.0,
            errc::invalid_argument, "invalid convergence configuration");

    const std::vector<std::size_t> seed_indices = initial_indices(m, k, config.seed_mode, &data);
    DataMatrix centers(k, data.cols());
    for (std::size_t c = 0; c < k; ++c) {
        const auto src = data.row(seed_indices[c]);
        std::copy(src.begin(), src.end(), centers.row(c).begin());
    }

    ClusterModel model;
    model.k = k;
    model.center_kind = CenterKind::coordinates;
    std::vector<int> prev_assignments;
    double prev_sse = std::numeric_limits<double>::infinity();

    for (std::size_t iter = 1; iter <= config.max_iterations; ++iter) {
        std::vector<int> assignments = assign_to_centers(data, centers);
        std::vector<double> dist(m);
        std::vector<std::size_t> sizes(k, 0);
        for (std::size_t i = 0; i < m; ++i) {
            dist[i] = squared_distance(data.row(i), centers.row(static_cast<std::size_t>(assignments[i])));
            ++sizes[static_cast<std::size_t>(assignments[i])];
        }
        repair_empty_clusters(assignments, dist, sizes);

        centers = update_means(data, assignments, k);
        double sse = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            sse += squared_distance(data.row(i), centers.row(static_cast<std::size_t>(assignments[i])));
        }
        model.sse_history.push_back(sse);
        model.iterations = iter;

        const bool stable = iter >= 2 && assignments == prev_assignments;
        const bool settled = iter >= 2 && (prev_sse - sse) <= config.rel_sse_tolerance * prev_sse;
        prev_assignments = std::move(assignments);
        prev_sse = sse;
        if (stable || settled) break;
    }

    model.center_coords = std::move(centers);
    model.assignments = std::move(prev_assignments);
    model.sse = prev_sse;
    return model;
}

ClusterModel k_medoids(const DissimilarityMatrix& dissim, std::size_t k,
                       const ClusterConfig& config) {
    const std::size_t m = dissim.size();
    require(k <= m, errc::k_too_large, "k exceeds the number of points");
    require(k >= 1, errc::invalid_argument, "k must be at least 1");
    require(config.max_iterations >= 1 && config.rel_sse_tolerance >= 0.0,
            errc::invalid_argument, "invalid convergence configuration");
    require(config.seed_mode.kind != SeedMode::Kind::kmeans_pp, errc::invalid_argument,
            "k-means++ seeding is defined on coordinates, not dissimilarities");

    std::vector<std::size_t> medoids = initial_indices(m, k, config.seed_mode, nullptr);

    ClusterModel model;
    model.k = k;
    model.center_kind = CenterKind::medoid_indices;
    std::vector<int> prev_assignments;
    double prev_objective = std::numeric_limits<double>::infinity();

    for (std::size_t iter = 1; iter <= config.max_iterations; ++iter) {
        std::vector<int> assignments = assign_to_medoids(dissim, medoids);
        std::vector<double> dist(m);
        std::vector<std::size_t> sizes(k, 0);
        for (std::size_t i = 0; i < m; ++i) {
            dist[i] = dissim(i, medoids[static_cast<std::size_t>(assignments[i])]);
            ++sizes[static_cast<std::size_t>(assignments[i])];
        }
        repair_empty_clusters(assignments, dist, sizes);

        medoids = update_medoids(dissim, assignments, k);
        double objective = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            objective += dissim(i, medoids[static_cast<std::size_t>(assignments[i])]);
        }
        model.sse_history.push_back(objective);
        model.iterations = iter;

        const bool stable = iter >= 2 && assignments == prev_assignments;
        const bool settled =
            iter >= 2 && (prev_objective - objective) <= config.rel_sse_tolerance * prev_objective;
        prev_assignments = std::move(assignments);
        prev_objective = objective;
        if (stable || settled) break;
    }

    model.medoid_indices = std::move(medoids);
    model.assignments = std::move(prev_assignments);
    model.sse = prev_objective;
    return model;
}

namespace {

std::vector<std::size_t> complement_indices(std::size_t m, std::span<const std::size_t> removed) {
    std::vector<bool> drop(m, false);
    for (const std::size_t idx : removed) drop[idx] = true;
    std::vector<std::size_t> kept;
    kept.reserve(m - removed.size());
    for (std::size_t i = 0; i < m; ++i) {
        if (!drop[i]) kept.push_back(i);
    }
    return kept;
}

struct PipelineInit {
    std::size_t k_used = 0;
    SeedSelection seeds;
    std::vector<std::size_t> outliers;
    std::vector<std::size_t> retained;           // ascending original indices
    std::vector<std::size_t> original_to_local;  // m entries; outliers map to m
    LdpsProfile profile;
};

PipelineInit run_ldps_stage(const DissimilarityMatrix& dissim, std::optional<std::size_t> k_star,
                            const LdpsParams& params, unsigned threads) {
    PipelineInit init;
    init.profile = search_peaks(dissim, params, threads);
    if (k_star.has_value()) {
        init.k_used = *k_star;
    } else {
        require(init.profile.estimated_k > 0, errc::k_estimation_failed,
                "gap rule rejected every k (tau* below tau_min); supply k explicitly");
        init.k_used = static_cast<std::size_t>(init.profile.estimated_k);
    }
    init.seeds = select_seeds(init.profile, init.k_used);
    init.outliers = detect_outliers(init.profile, params.outlier_threshold, init.seeds.indices);
    init.retained = complement_indices(dissim.size(), init.outliers);
    init.original_to_local.assign(dissim.size(), dissim.size());
    for (std::size_t local = 0; local < init.retained.size(); ++local) {
        init.original_to_local[init.retained[local]] = local;
    }
    return init;
}

std::vector<int> expand_assignments(const PipelineInit& init, std::span<const int> local,
                                    std::size_t m) {
    std::vector<int> full(m, -1);
    for (std::size_t idx = 0; idx < init.retained.size(); ++idx) {
        full[init.retained[idx]] = local[idx];
    }
    return full;
}

} // namespace

LdpsClusterResult ldps_means(const DataMatrix& data, const DissimilarityMatrix& dissim,
                             std::optional<std::size_t> k_star, const LdpsParams& params,
                             const ClusterConfig& base, unsigned threads) {
    data.validate();
    require(dissim.size() == data.rows(), errc::invalid_argument,
            "dissimilarity size does not match the data");
    PipelineInit init = run_ldps_stage(dissim, k_star, params, threads);

    DataMatrix retained(init.retained.size(), data.cols());
    for (std::size_t local = 0; local < init.retained.size(); ++local) {
        const auto src = data.row(init.retained[local]);
        std::copy(src.begin(), src.end(), retained.row(local).begin());
    }
    std::vector<std::size_t> local_seeds;
    local_seeds.reserve(init.seeds.indices.size());
    for (const std::size_t idx : init.seeds.indices) {
        local_seeds.push_back(init.original_to_local[idx]);
    }

    ClusterConfig config = base;
    config.seed_mode = SeedMode::explicit_indices(std::move(local_seeds));
    ClusterModel model = k_means(retained, init.k_used, config);

    LdpsClusterResult result;
    result.assignments = expand_assignments(init, model.assignments, data.rows());
    result.model = std::move(model);
    result.outliers = std::move(init.outliers);
    result.tau_star = init.seeds.tau_star;
    result.estimated_k = init.profile.estimated_k;
    result.k_used = init.k_used;
    return result;
}

LdpsClusterResult ldps_means(const DataMatrix& data, std::optional<std::size_t> k_star,
                             const LdpsParams& params, const ClusterConfig& base,
                             unsigned threads) {
    const DissimilarityMatrix dissim = squared_euclidean(data, threads);
    return ldps_means(data, dissim, k_star, params, base, threads);
}

LdpsClusterResult ldps_medoids(const DissimilarityMatrix& dissim,
                               std::optional<std::size_t> k_star, const LdpsParams& params,
                               const ClusterConfig& base, unsigned threads) {
    PipelineInit init = run_ldps_stage(dissim, k_star, params, threads);

    std::vector<std::size_t> local_seeds;
    local_seeds.reserve(init.seeds.indices.size());
    for (const std::size_t idx : init.seeds.indices) {
        local_seeds.push_back(init.original_to_local[idx]);
    }
    ClusterConfig config = base;
    config.seed_mode = SeedMode::explicit_indices(std::move(local_seeds));

    ClusterModel model;
    if (init.outliers.empty()) {
        model = k_medoids(dissim, init.k_used, config);
    } else {
        model = k_medoids(dissim.submatrix(init.retained), init.k_used, config);
    }
    for (std::size_t& medoid : model.medoid_indices) medoid = init.retained[medoid];

    LdpsClusterResult result;
    result.assignments = expand_assignments(init, model.assignments, dissim.size());
    result.model = std::move(model);
    result.outliers = std::move(init.outliers);
    result.tau_star = init.seeds.tau_star;
    result.estimated_k = init.profile.estimated_k;
    result.k_used = init.k_used;
    return result;
}

} // namespace ldps
