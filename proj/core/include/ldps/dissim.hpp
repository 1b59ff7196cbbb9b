#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "ldps/types.hpp"

namespace ldps {

/// Symmetrized t-nearest-neighbor graph. Edge weights are plain Euclidean
/// distances (path lengths compose additively only for plain distances).
struct NeighborGraph {
    std::vector<std::vector<std::pair<std::uint32_t, double>>> adjacency;
    std::size_t t = 0;

    std::size_t size() const noexcept { return adjacency.size(); }

    /// Enforces symmetry and positive finite edge weights.
    void validate() const;
};

/// Maps every attribute column affinely onto [0,1]. Constant columns map to
/// 0 everywhere (the affine map is undefined there and a constant attribute
/// carries no cluster information).
DataMatrix min_max_normalize(const DataMatrix& data);

/// d_ij = ||x_i - x_j||^2.
DissimilarityMatrix squared_euclidean(const DataMatrix& data, unsigned threads = 1);

/// Connects every point to its t nearest points by Euclidean distance, then
/// symmetrizes by edge union. A disconnected result is repaired by repeatedly
/// adding the single shortest inter-component edge until one component
/// remains, so downstream graph distances are always finite.
NeighborGraph build_tnn_graph(const DataMatrix& data, std::size_t t);

/// Manifold dissimilarity: lengths of shortest paths along graph edges,
/// one single-source pass per point. Throws disconnected_graph if any pair
/// is unreachable (cannot happen for build_tnn_graph output).
DissimilarityMatrix manifold_distance(const NeighborGraph& graph, unsigned threads = 1);

} // namespace ldps
