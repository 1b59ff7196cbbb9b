#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ldps/types.hpp"

namespace ldps {

struct GeneratorSpec {
    std::string kind;
    std::size_t k = 0;
    std::size_t per_cluster = 0;
    std::size_t dims = 0;
    double sigma = 0.0;
    double min_sep = 0.0;
    double noise = 0.0;
    std::uint64_t seed = 0;
};

struct LabeledDataset {
    DataMatrix data;
    std::optional<std::vector<int>> labels;  // 0..k-1 when present
    GeneratorSpec spec;
};

/// k isotropic Gaussian clusters with covariance sigma*I in [0,1]^dims.
/// Centers are rejection-sampled until all pairwise distances reach min_sep;
/// a center that cannot be placed within the attempt budget throws
/// cannot_place_centers. Exactly m0 points per cluster, labels attached.
LabeledDataset gen_gaussian_clusters(std::size_t k, std::size_t m0, double sigma,
                                     std::size_t dims, std::uint64_t seed, double min_sep);

/// Concentric noisy rings (one label per ring): uniform angles, radius
/// perturbed uniformly within +-noise. radii must be strictly increasing.
LabeledDataset gen_rings(std::size_t k, std::size_t m0, std::span<const double> radii,
                         double noise, std::uint64_t seed);

/// Whitespace-delimited point file: one point per line, '#' starts a comment
/// line. When the last column of every row is a bare integer (and there is at
/// least one other column) it is read as the label and re-indexed to 0..k-1.
LabeledDataset load_point_file(const std::filesystem::path& path);

/// Inverse of load_point_file, '\n' line endings. Coordinates are written in
/// shortest round-trip form; integer-valued coordinates get a ".0" suffix so
/// an unlabeled file never reloads as a labeled one.
void save_point_file(const std::filesystem::path& path, const LabeledDataset& dataset,
                     std::string_view header_comment = {});

/// Shortest decimal form that parses back to exactly the same double.
/// Locale-independent ('.' decimal separator always).
std::string format_double(double value);

} // namespace ldps
