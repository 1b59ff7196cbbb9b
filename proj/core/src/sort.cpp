#include "ldps/sort.hpp"

#include <algorithm>
#include <numeric>

#include "ldps/error.hpp"

namespace ldps {

SortedDescending stable_sort_descending(std::span<const double> values) {
    require(!values.empty(), errc::empty_input, "cannot sort an empty sequence");
    SortedDescending out;
    out.order.resize(values.size());
    std::iota(out.order.begin(), out.order.end(), std::size_t{0});
    std::stable_sort(out.order.begin(), out.order.end(),
                     [&values](std::size_t a, std::size_t b) { return values[a] > values[b]; });
    out.values.reserve(values.size());
    for (const std::size_t idx : out.order) out.values.push_back(values[idx]);
    return out;
}

} // namespace ldps
