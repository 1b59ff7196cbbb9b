#pragma once

#include <stdexcept>
#include <string>

namespace ldps {

enum class errc {
    empty_input,
    non_finite_data,
    invalid_neighbor_count,
    disconnected_graph,
    invalid_bandwidth,
    invalid_radius,
    invalid_score,
    too_few_points,
    k_too_large,
    empty_grid,
    invalid_cutoff,
    k_estimation_failed,
    cannot_place_centers,
    malformed_file,
    parse_error,
    label_mismatch,
    invalid_argument,
    io_error,
};

const char* to_string(errc code) noexcept;

/// Exception carrying a machine-checkable error code alongside the message.
class Error : public std::runtime_error {
public:
    Error(errc code, const std::string& message)
        : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

    errc code() const noexcept { return code_; }

private:
    errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& message) {
    throw Error(code, message);
}

inline void require(bool condition, errc code, const std::string& message) {
    if (!condition) fail(code, message);
}

} // namespace ldps
