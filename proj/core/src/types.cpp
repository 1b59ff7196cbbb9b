#include "ldps/types.hpp"

#include <cmath>
#include <string>

namespace ldps {

void DataMatrix::validate() const {
    require(rows_ >= 1 && cols_ >= 1, errc::empty_input, "data matrix must be at least 1x1");
    for (const double v : values_) {
        require(std::isfinite(v), errc::non_finite_data, "data matrix contains a non-finite value");
    }
}

DissimilarityMatrix::DissimilarityMatrix(std::size_t size, Measure measure,
                                         std::vector<double> entries,
                                         std::size_t graph_neighbors)
    : size_(size), measure_(measure), graph_neighbors_(graph_neighbors),
      entries_(std::move(entries)) {
    require(size_ >= 1, errc::empty_input, "dissimilarity matrix must be at least 1x1");
    require(entries_.size() == size_ * size_, errc::invalid_argument,
            "entry count does not match matrix size");
    double max_seen = 0.0;
    for (const double v : entries_) {
        if (v > max_seen) max_seen = v;
    }
    d_star_ = max_seen;
}

void DissimilarityMatrix::validate() const {
    double max_seen = 0.0;
    for (std::size_t i = 0; i < size_; ++i) {
        require((*this)(i, i) == 0.0, errc::invalid_argument,
                "nonzero diagonal at index " + std::to_string(i));
        for (std::size_t j = 0; j < size_; ++j) {
            const double v = (*this)(i, j);
            require(std::isfinite(v), errc::non_finite_data, "non-finite dissimilarity entry");
            require(v >= 0.0, errc::invalid_argument, "negative dissimilarity entry");
            require(v == (*this)(j, i), errc::invalid_argument, "asymmetric dissimilarity entry");
            if (v > max_seen) max_seen = v;
        }
    }
    require(max_seen == d_star_, errc::invalid_argument, "cached d* is stale");
}

DissimilarityMatrix DissimilarityMatrix::submatrix(std::span<const std::size_t> keep) const {
    const std::size_t n = keep.size();
    require(n >= 1, errc::empty_input, "submatrix selection is empty");
    std::vector<double> entries(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto source = row(keep[i]);
        for (std::size_t j = 0; j < n; ++j) entries[i * n + j] = source[keep[j]];
    }
    return DissimilarityMatrix(n, measure_, std::move(entries), graph_neighbors_);
}

} // namespace ldps
