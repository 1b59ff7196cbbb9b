#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "ldps/ldps.hpp"
#include "ldps/types.hpp"

namespace ldps {

struct SeedMode {
    enum class Kind { random, kmeans_pp, explicit_indices };

    Kind kind = Kind::random;
    std::uint64_t seed = 0;
    std::vector<std::size_t> indices;

    static SeedMode random(std::uint64_t seed) { return {Kind::random, seed, {}}; }
    static SeedMode kmeans_pp(std::uint64_t seed) { return {Kind::kmeans_pp, seed, {}}; }
    static SeedMode explicit_indices(std::vector<std::size_t> indices) {
        return {Kind::explicit_indices, 0, std::move(indices)};
    }
};

struct ClusterConfig {
    std::size_t max_iterations = 300;
    double rel_sse_tolerance = 1e-9;
    SeedMode seed_mode;
};

/// Nearest-center assignment; equidistant points go to the smallest index.
std::vector<int> assign_to_centers(const DataMatrix& data, const DataMatrix& centers);
std::vector<int> assign_to_medoids(const DissimilarityMatrix& dissim,
                                   std::span<const std::size_t> medoids);

/// Coordinate mean per cluster. Every cluster must be nonempty (the in-loop
/// empty-cluster repair happens inside k_means, not here).
DataMatrix update_means(const DataMatrix& data, std::span<const int> assignments, std::size_t k);

/// Per cluster, the member minimizing total within-cluster dissimilarity;
/// ties go to the smallest point index.
std::vector<std::size_t> update_medoids(const DissimilarityMatrix& dissim,
                                        std::span<const int> assignments, std::size_t k);

/// k-means++ seeding: first seed uniform, every further seed sampled with
/// probability proportional to the squared distance to the nearest seed.
std::vector<std::size_t> kmeans_pp_seeds(const DataMatrix& data, std::size_t k,
                                         std::uint64_t seed);

ClusterModel k_means(const DataMatrix& data, std::size_t k, const ClusterConfig& config);
ClusterModel k_medoids(const DissimilarityMatrix& dissim, std::size_t k,
                       const ClusterConfig& config);

/// Output of the composed pipelines. The model covers retained points only;
/// `assignments` is in original indexing with -1 marking removed outliers.
/// Medoid indices inside the model are mapped back to original indexing.
struct LdpsClusterResult {
    ClusterModel model;
    std::vector<std::size_t> outliers;
    std::vector<int> assignments;
    double tau_star = 0.0;
    int estimated_k = -1;   // gap-rule estimate, even when k_star was supplied
    std::size_t k_used = 0;
};

/// Peak search on the squared-Euclidean dissimilarity, seed selection,
/// outlier removal, then k-means started from the peak coordinates.
/// Without k_star, a failed estimate (-1) throws k_estimation_failed.
LdpsClusterResult ldps_means(const DataMatrix& data, std::optional<std::size_t> k_star,
                             const LdpsParams& params, const ClusterConfig& base = {},
                             unsigned threads = 1);

/// Same, reusing a prebuilt dissimilarity of the same data.
LdpsClusterResult ldps_means(const DataMatrix& data, const DissimilarityMatrix& dissim,
                             std::optional<std::size_t> k_star, const LdpsParams& params,
                             const ClusterConfig& base = {}, unsigned threads = 1);

/// Medoid variant over an arbitrary dissimilarity: outlier rows/columns are
/// deleted before clustering and indices are reported in original indexing.
LdpsClusterResult ldps_medoids(const DissimilarityMatrix& dissim,
                               std::optional<std::size_t> k_star, const LdpsParams& params,
                               const ClusterConfig& base = {}, unsigned threads = 1);

} // namespace ldps
