#include "ldps/data.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "ldps/rng.hpp"

namespace ldps {

namespace {

constexpr std::size_t kMaxPlacementAttempts = 10000;
constexpr double kTwoPi = 6.283185307179586476925286766559;

bool is_integer_token(std::string_view token) {
    if (token.empty()) return false;
    std::size_t start = (token[0] == '+' || token[0] == '-') ? 1 : 0;
    if (start == token.size()) return false;
    for (std::size_t i = start; i < token.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(token[i]))) return false;
    }
    return true;
}

std::vector<std::string_view> split_tokens(std::string_view line) {
    std::vector<std::string_view> tokens;
    std::size_t pos = 0;
    while (pos < line.size()) {
        while (pos < line.size() && std::isspace(static_cast<unsigned char>(line[pos]))) ++pos;
        std::size_t end = pos;
        while (end < line.size() && !std::isspace(static_cast<unsigned char>(line[end]))) ++end;
        if (end > pos) tokens.push_back(line.substr(pos, end - pos));
        pos = end;
    }
    return tokens;
}

double parse_double(std::string_view token, std::size_t line_no) {
    double value = 0.0;
    const auto result = std::from_chars(token.data(), token.data() + token.size(), value);
    require(result.ec == std::errc{} && result.ptr == token.data() + token.size(),
            errc::parse_error,
            "line " + std::to_string(line_no) + ": cannot parse '" + std::string(token) + "'");
    require(std::isfinite(value), errc::parse_error,
            "line " + std::to_string(line_no) + ": non-finite value");
    return value;
}

} // namespace

LabeledDataset gen_gaussian_clusters(std::size_t k, std::size_t m0, double sigma,
                                     std::size_t dims, std::uint64_t seed, double min_sep) {
    require(k >= 1 && m0 >= 1 && dims >= 1, errc::invalid_argument,
            "k, m0 and dims must be at least 1");
    require(std::isfinite(sigma) && sigma > 0.0, errc::invalid_argument, "sigma must be positive");
    require(std::isfinite(min_sep) && min_sep >= 0.0, errc::invalid_argument,
            "min_sep must be nonnegative");

    Rng rng(seed);
    DataMatrix centers(k, dims);
    for (std::size_t c = 0; c < k; ++c) {
        bool placed = false;
        for (std::size_t attempt = 0; attempt < kMaxPlacementAttempts; ++attempt) {
            std::array<double, 64> candidate_storage{};
            require(dims <= candidate_storage.size(), errc::invalid_argument,
                    "dimensionality too large");
            for (std::size_t a = 0; a < dims; ++a) candidate_storage[a] = rng.uniform01();
            bool separated = true;
            for (std::size_t prior = 0; prior < c && separated; ++prior) {
                double sq = 0.0;
                for (std::size_t a = 0; a < dims; ++a) {
                    const double diff = candidate_storage[a] - centers(prior, a);
                    sq += diff * diff;
                }
                separated = std::sqrt(sq) >= min_sep;
            }
            if (separated) {
                for (std::size_t a = 0; a < dims; ++a) centers(c, a) = candidate_storage[a];
                placed = true;
                break;
            }
        }
        require(placed, errc::cannot_place_centers,
                "could not place " + std::to_string(k) + " centers with min separation " +
                    std::to_string(min_sep));
    }

    const double stddev = std::sqrt(sigma);
    LabeledDataset out;
    out.data = DataMatrix(k * m0, dims);
    out.labels = std::vector<int>(k * m0);
    for (std::size_t c = 0; c < k; ++c) {
        for (std::size_t i = 0; i < m0; ++i) {
            const std::size_t row = c * m0 + i;
            for (std::size_t a = 0; a < dims; ++a) {
                out.data(row, a) = centers(c, a) + stddev * rng.normal();
            }
            (*out.labels)[row] = static_cast<int>(c);
        }
    }
    out.spec = {"gaussian", k, m0, dims, sigma, min_sep, 0.0, seed};
    return out;
}

LabeledDataset gen_rings(std::size_t k, std::size_t m0, std::span<const double> radii,
                         double noise, std::uint64_t seed) {
    require(k >= 1 && m0 >= 1, errc::invalid_argument, "k and m0 must be at least 1");
    require(radii.size() == k, errc::invalid_argument, "need one radius per ring");
    require(std::isfinite(noise) && noise >= 0.0, errc::invalid_argument,
            "noise must be nonnegative");
    for (std::size_t j = 0; j < k; ++j) {
        require(std::isfinite(radii[j]) && radii[j] > 0.0, errc::invalid_argument,
                "radii must be positive");
        require(j == 0 || radii[j] > radii[j - 1], errc::invalid_argument,
                "radii must be strictly increasing");
    }

    Rng rng(seed);
    LabeledDataset out;
    out.data = DataMatrix(k * m0, 2);
    out.labels = std::vector<int>(k * m0);
    for (std::size_t j = 0; j < k; ++j) {
        for (std::size_t i = 0; i < m0; ++i) {
            const std::size_t row = j * m0 + i;
            const double angle = kTwoPi * rng.uniform01();
            const double radius = radii[j] + noise * (2.0 * rng.uniform01() - 1.0);
            out.data(row, 0) = radius * std::cos(angle);
            out.data(row, 1) = radius * std::sin(angle);
            (*out.labels)[row] = static_cast<int>(j);
        }
    }
    out.spec = {"rings", k, m0, 2, 0.0, 0.0, noise, seed};
    return out;
}

LabeledDataset load_point_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    require(in.good(), errc::io_error, "cannot open '" + path.string() + "'");

    std::vector<std::vector<std::string_view>> rows;
    std::vector<std::string> lines;  // keeps the string_views alive
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        lines.push_back(line);
    }
    std::vector<std::size_t> line_numbers;
    for (std::size_t n = 0; n < lines.size(); ++n) {
        std::string_view view = lines[n];
        const std::size_t first = view.find_first_not_of(" \t");
        if (first == std::string_view::npos || view[first] == '#') continue;
        rows.push_back(split_tokens(view));
        line_numbers.push_back(n + 1);
    }
    require(!rows.empty(), errc::empty_input, "'" + path.string() + "' holds no data rows");

    const std::size_t width = rows[0].size();
    for (std::size_t r = 1; r < rows.size(); ++r) {
        require(rows[r].size() == width, errc::malformed_file,
                "line " + std::to_string(line_numbers[r]) + ": expected " +
                    std::to_string(width) + " columns, got " + std::to_string(rows[r].size()));
    }

    // A trailing column of bare integers in every row is the label column.
    bool labeled = width >= 2;
    for (const auto& row : rows) {
        if (!is_integer_token(row.back())) {
            labeled = false;
            break;
        }
    }
    const std::size_t dims = labeled ? width - 1 : width;

    LabeledDataset out;
    out.data = DataMatrix(rows.size(), dims);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        for (std::size_t a = 0; a < dims; ++a) {
            out.data(r, a) = parse_double(rows[r][a], line_numbers[r]);
        }
    }
    if (labeled) {
        std::vector<long> raw(rows.size());
        std::map<long, int> reindex;
        for (std::size_t r = 0; r < rows.size(); ++r) {
            const auto token = rows[r].back();
            long value = 0;
            const auto result = std::from_chars(token.data(), token.data() + token.size(), value);
            require(result.ec == std::errc{}, errc::parse_error,
                    "line " + std::to_string(line_numbers[r]) + ": label out of range");
            raw[r] = value;
            reindex.emplace(value, 0);
        }
        int next = 0;
        for (auto& [value, id] : reindex) id = next++;
        out.labels = std::vector<int>(rows.size());
        for (std::size_t r = 0; r < rows.size(); ++r) (*out.labels)[r] = reindex[raw[r]];
    }
    return out;
}

void save_point_file(const std::filesystem::path& path, const LabeledDataset& dataset,
                     std::string_view header_comment) {
    std::ofstream out(path, std::ios::binary);  // binary keeps '\n' endings everywhere
    require(out.good(), errc::io_error, "cannot write '" + path.string() + "'");
    if (!header_comment.empty()) out << "# " << header_comment << '\n';
    for (std::size_t i = 0; i < dataset.data.rows(); ++i) {
        for (std::size_t a = 0; a < dataset.data.cols(); ++a) {
            if (a > 0) out << ' ';
            out << format_double(dataset.data(i, a));
        }
        if (dataset.labels.has_value()) out << ' ' << (*dataset.labels)[i];
        out << '\n';
    }
    require(out.good(), errc::io_error, "write to '" + path.string() + "' failed");
}

std::string format_double(double value) {
    std::array<char, 64> buffer{};
    const auto result = std::to_chars(buffer.data(), buffer.data() + buffer.size(), value);
    std::string text(buffer.data(), result.ptr);
    // Bare integers get a decimal suffix so a coordinate column can never be
    // mistaken for the label column on reload.
    if (text.find_first_of(".eEni") == std::string::npos) text += ".0";
    return text;
}

} // namespace ldps
