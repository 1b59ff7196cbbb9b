#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "ldps/error.hpp"

namespace ldps {

/// Dense sample matrix: m rows (points) by p columns (attributes), row-major.
class DataMatrix {
public:
    DataMatrix() = default;

    DataMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), values_(rows * cols, 0.0) {}

    DataMatrix(std::size_t rows, std::size_t cols, std::vector<double> values)
        : rows_(rows), cols_(cols), values_(std::move(values)) {
        require(values_.size() == rows_ * cols_, errc::invalid_argument,
                "value count does not match matrix shape");
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    double operator()(std::size_t i, std::size_t a) const { return values_[i * cols_ + a]; }
    double& operator()(std::size_t i, std::size_t a) { return values_[i * cols_ + a]; }

    std::span<const double> row(std::size_t i) const {
        return {values_.data() + i * cols_, cols_};
    }
    std::span<double> row(std::size_t i) { return {values_.data() + i * cols_, cols_}; }

    const std::vector<double>& values() const noexcept { return values_; }

    /// Enforces m >= 1, p >= 1 and finiteness of every entry.
    void validate() const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> values_;
};

enum class Measure {
    squared_euclidean,
    manifold_graph,
};

/// Symmetric nonnegative m-by-m dissimilarity matrix with zero diagonal.
/// The maximum entry d* is computed once at construction; the normalized
/// parameters (h-bar, r-bar) are interpreted as fractions of it.
class DissimilarityMatrix {
public:
    DissimilarityMatrix(std::size_t size, Measure measure, std::vector<double> entries,
                        std::size_t graph_neighbors = 0);

    std::size_t size() const noexcept { return size_; }
    Measure measure() const noexcept { return measure_; }
    std::size_t graph_neighbors() const noexcept { return graph_neighbors_; }

    double operator()(std::size_t i, std::size_t j) const { return entries_[i * size_ + j]; }

    std::span<const double> row(std::size_t i) const { return {entries_.data() + i * size_, size_}; }

    /// d* = max_{i,j} d_ij.
    double max_entry() const noexcept { return d_star_; }

    /// Checks symmetry, zero diagonal, nonnegativity, finiteness and that
    /// the cached d* equals the true maximum.
    void validate() const;

    /// Principal submatrix over `keep` (ascending original indices).
    DissimilarityMatrix submatrix(std::span<const std::size_t> keep) const;

private:
    std::size_t size_ = 0;
    Measure measure_ = Measure::squared_euclidean;
    std::size_t graph_neighbors_ = 0;
    double d_star_ = 0.0;
    std::vector<double> entries_;
};

/// Normalized LDPS parameters. Absolute bandwidth and radius are always
/// derived as h = bandwidth_scale * d*, r = radius_scale * d* and never
/// stored independently.
struct LdpsParams {
    double bandwidth_scale = 0.1;  // h-bar, grid-searched over (0, 0.2] by default
    double radius_scale = 0.1;     // r-bar, grid-searched over [0.05, 0.5] by default
    double density_exponent = 1.0; // 1 or 0.25; 0.25 flattens the density spread
    double tau_min = 0.1;          // below this gap the k estimate is rejected (-1)
    double outlier_threshold = 0.95;
};

enum class CenterKind {
    coordinates,
    medoid_indices,
};

/// Result of one clustering run. `sse` is the final objective: sum of
/// squared Euclidean distances for coordinate centers, sum of dissimilarities
/// for medoids. `sse_history` holds the objective after every update step.
struct ClusterModel {
    std::size_t k = 0;
    CenterKind center_kind = CenterKind::coordinates;
    DataMatrix center_coords;                 // k x p when center_kind == coordinates
    std::vector<std::size_t> medoid_indices;  // size k when center_kind == medoid_indices
    std::vector<int> assignments;             // per-point cluster index in [0, k)
    double sse = 0.0;
    std::size_t iterations = 0;
    std::vector<double> sse_history;
};

} // namespace ldps
