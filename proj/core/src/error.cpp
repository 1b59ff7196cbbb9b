#include "ldps/error.hpp"

namespace ldps {

const char* to_string(errc code) noexcept {
    switch (code) {
    case errc::empty_input: return "EmptyInput";
    case errc::non_finite_data: return "NonFiniteData";
    case errc::invalid_neighbor_count: return "InvalidNeighborCount";
    case errc::disconnected_graph: return "DisconnectedGraph";
    case errc::invalid_bandwidth: return "InvalidBandwidth";
    case errc::invalid_radius: return "InvalidRadius";
    case errc::invalid_score: return "InvalidScore";
    case errc::too_few_points: return "TooFewPoints";
    case errc::k_too_large: return "KTooLarge";
    case errc::empty_grid: return "EmptyGrid";
    case errc::invalid_cutoff: return "InvalidCutoff";
    case errc::k_estimation_failed: return "KEstimationFailed";
    case errc::cannot_place_centers: return "CannotPlaceCenters";
    case errc::malformed_file: return "MalformedFile";
    case errc::parse_error: return "ParseError";
    case errc::label_mismatch: return "LabelMismatch";
    case errc::invalid_argument: return "InvalidArgument";
    case errc::io_error: return "IoError";
    }
    return "UnknownError";
}

} // namespace ldps
