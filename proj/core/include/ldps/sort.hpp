#pragma once

#include <span>
#include <vector>

namespace ldps {

struct SortedDescending {
    std::vector<double> values;       // input values in descending order
    std::vector<std::size_t> order;   // original index of each sorted value
};

/// Stable descending sort: ties keep ascending original index, so the
/// returned order is a deterministic permutation of 0..n-1.
SortedDescending stable_sort_descending(std::span<const double> values);

} // namespace ldps
