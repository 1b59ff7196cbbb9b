#include "ldps/ldps.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ldps/parallel.hpp"
#include "ldps/sort.hpp"

namespace ldps {

namespace {

constexpr double kInvSqrt2Pi = 0.39894228040143267793994605993438;

// Gap rule shared by LDPS and the CFSFDP baseline: gaps between consecutive
// sorted scores plus a final gap from the last score down to zero, so k can
// reach m when every point is a peak of its own.
struct GapRule {
    std::vector<double> gaps;
    std::size_t k = 0;       // argmax gap, 1-based; smallest index on ties
    double tau_star = 0.0;
};

GapRule apply_gap_rule(std::span<const double> sorted_values) {
    GapRule out;
    const std::size_t m = sorted_values.size();
    out.gaps.resize(m);
    for (std::size_t i = 0; i + 1 < m; ++i) out.gaps[i] = sorted_values[i] - sorted_values[i + 1];
    out.gaps[m - 1] = sorted_values[m - 1];
    std::size_t best = 0;
    for (std::size_t i = 1; i < m; ++i) {
        if (out.gaps[i] > out.gaps[best]) best = i;
    }
    out.k = best + 1;
    out.tau_star = out.gaps[best];
    return out;
}

std::vector<double> normalized_density(std::span<const double> rho, double exponent) {
    double rho_star = rho[0];
    for (const double v : rho) rho_star = std::max(rho_star, v);
    std::vector<double> out(rho.size());
    if (exponent == 1.0) {
        for (std::size_t i = 0; i < rho.size(); ++i) out[i] = rho[i] / rho_star;
    } else {
        for (std::size_t i = 0; i < rho.size(); ++i) out[i] = std::pow(rho[i] / rho_star, exponent);
    }
    return out;
}

void check_score_input(double value) {
    require(std::isfinite(value) && value >= 0.0 && value <= 1.0, errc::invalid_score,
            "score inputs must lie in [0, 1]");
}

} // namespace

std::vector<double> local_density(const DissimilarityMatrix& dissim, double bandwidth,
                                  unsigned threads) {
    require(std::isfinite(bandwidth) && bandwidth > 0.0, errc::invalid_bandwidth,
            "bandwidth must be positive");
    const std::size_t m = dissim.size();
    std::vector<double> rho(m);
    const double scale = kInvSqrt2Pi / (static_cast<double>(m) * bandwidth);
    parallel_for(m, threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            const auto row = dissim.row(i);
            double sum = 0.0;
            for (std::size_t j = 0; j < m; ++j) {
                const double z = row[j] / bandwidth;
                sum += std::exp(-0.5 * z * z);
            }
            rho[i] = scale * sum;
        }
    });
    return rho;
}

std::vector<double> nearest_denser_distance(const DissimilarityMatrix& dissim,
                                            std::span<const double> rho, unsigned threads) {
    const std::size_t m = dissim.size();
    require(rho.size() == m, errc::invalid_argument, "density vector size mismatch");
    std::vector<double> nearest(m, std::numeric_limits<double>::infinity());
    parallel_for(m, threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            const auto row = dissim.row(i);
            const double rho_i = rho[i];
            double best = std::numeric_limits<double>::infinity();
            for (std::size_t j = 0; j < m; ++j) {
                const double d = row[j];
                if (d > 0.0 && d < best && rho[j] > rho_i) best = d;
            }
            nearest[i] = best;
        }
    });
    return nearest;
}

std::vector<double> local_distinctiveness_index(const DissimilarityMatrix& dissim,
                                                std::span<const double> rho, double radius,
                                                unsigned threads) {
    require(std::isfinite(radius) && radius > 0.0, errc::invalid_radius,
            "radius must be positive");
    // The nearest strictly denser point inside the r-neighborhood, when one
    // exists, is the globally nearest denser point; so one dominator-distance
    // pass serves every radius.
    const std::vector<double> nearest = nearest_denser_distance(dissim, rho, threads);
    std::vector<double> ldi(nearest.size());
    for (std::size_t i = 0; i < nearest.size(); ++i) {
        ldi[i] = nearest[i] <= radius ? nearest[i] / radius : 1.0;
    }
    return ldi;
}

double gamma_center(double rho_bar, double ldi) {
    check_score_input(rho_bar);
    check_score_input(ldi);
    const double density_deficit = 1.0 - rho_bar;
    const double ldi_deficit = 1.0 - ldi;
    const double inner = 1.0 - 0.5 * density_deficit * density_deficit - 0.5 * ldi_deficit * ldi_deficit;
    return inner * inner;
}

std::vector<double> gamma_center(std::span<const double> rho_bar, std::span<const double> ldi) {
    require(rho_bar.size() == ldi.size(), errc::invalid_argument, "score input size mismatch");
    std::vector<double> out(rho_bar.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = gamma_center(rho_bar[i], ldi[i]);
    return out;
}

double gamma_outlier(double rho_bar, double ldi) {
    check_score_input(rho_bar);
    check_score_input(ldi);
    const double ldi_deficit = 1.0 - ldi;
    const double inner = 1.0 - 0.5 * rho_bar * rho_bar - 0.5 * ldi_deficit * ldi_deficit;
    return inner * inner;
}

std::vector<double> gamma_outlier(std::span<const double> rho_bar, std::span<const double> ldi) {
    require(rho_bar.size() == ldi.size(), errc::invalid_argument, "score input size mismatch");
    std::vector<double> out(rho_bar.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = gamma_outlier(rho_bar[i], ldi[i]);
    return out;
}

LdpsProfile search_peaks(const DissimilarityMatrix& dissim, const LdpsParams& params,
                         unsigned threads) {
    const std::size_t m = dissim.size();
    require(m >= 2, errc::too_few_points, "peak search needs at least two points");
    const double d_star = dissim.max_entry();
    const double h = params.bandwidth_scale * d_star;
    const double r = params.radius_scale * d_star;

    LdpsProfile profile;
    profile.rho = local_density(dissim, h, threads);
    profile.rho_bar = normalized_density(profile.rho, params.density_exponent);
    profile.ldi = local_distinctiveness_index(dissim, profile.rho, r, threads);
    profile.gamma_center = gamma_center(profile.rho_bar, profile.ldi);
    profile.gamma_outlier = gamma_outlier(profile.rho_bar, profile.ldi);

    auto sorted = stable_sort_descending(profile.gamma_center);
    profile.sorted_order = std::move(sorted.order);
    auto rule = apply_gap_rule(sorted.values);
    profile.gaps = std::move(rule.gaps);
    profile.tau_star = rule.tau_star;
    if (rule.tau_star < params.tau_min) {
        profile.estimated_k = -1;
    } else {
        profile.estimated_k = static_cast<int>(rule.k);
        profile.peak_indices.assign(profile.sorted_order.begin(),
                                    profile.sorted_order.begin() + static_cast<std::ptrdiff_t>(rule.k));
    }
    return profile;
}

SeedSelection select_seeds(const LdpsProfile& profile, std::size_t k_star) {
    const std::size_t m = profile.sorted_order.size();
    require(k_star <= m, errc::k_too_large, "k exceeds the number of points");
    require(k_star >= 1, errc::invalid_argument, "k must be at least 1");
    SeedSelection out;
    out.indices.assign(profile.sorted_order.begin(),
                       profile.sorted_order.begin() + static_cast<std::ptrdiff_t>(k_star));
    out.tau_star = profile.gaps[k_star - 1];
    return out;
}

std::vector<std::size_t> detect_outliers(const LdpsProfile& profile, double threshold,
                                         std::span<const std::size_t> exclude) {
    std::vector<bool> excluded(profile.gamma_outlier.size(), false);
    for (const std::size_t idx : exclude) excluded[idx] = true;
    std::vector<std::size_t> outliers;
    for (std::size_t i = 0; i < profile.gamma_outlier.size(); ++i) {
        if (!excluded[i] && profile.gamma_outlier[i] > threshold) outliers.push_back(i);
    }
    return outliers;
}

std::vector<std::size_t> detect_outliers(const LdpsProfile& profile, double threshold) {
    return detect_outliers(profile, threshold, profile.peak_indices);
}

std::vector<double> linear_grid(double start, double stop, std::size_t count) {
    require(count >= 1, errc::empty_grid, "grid needs at least one point");
    std::vector<double> grid(count);
    if (count == 1) {
        grid[0] = start;
        return grid;
    }
    const double step = (stop - start) / static_cast<double>(count - 1);
    for (std::size_t i = 0; i < count; ++i) grid[i] = start + step * static_cast<double>(i);
    grid[count - 1] = stop;
    return grid;
}

std::vector<double> default_bandwidth_grid() { return linear_grid(0.02, 0.2, 10); }

std::vector<double> default_radius_grid() { return linear_grid(0.05, 0.5, 10); }

GridSearchResult grid_search_theta(const DissimilarityMatrix& dissim,
                                   std::span<const double> bandwidth_grid,
                                   std::span<const double> radius_grid, const LdpsParams& base,
                                   unsigned threads) {
    require(!bandwidth_grid.empty() && !radius_grid.empty(), errc::empty_grid,
            "parameter grids must be nonempty");
    for (const double h : bandwidth_grid) {
        require(std::isfinite(h) && h > 0.0, errc::invalid_bandwidth,
                "bandwidth grid entries must be positive");
    }
    for (const double r : radius_grid) {
        require(std::isfinite(r) && r > 0.0, errc::invalid_radius,
                "radius grid entries must be positive");
    }
    const std::size_t m = dissim.size();
    require(m >= 2, errc::too_few_points, "peak search needs at least two points");
    const double d_star = dissim.max_entry();

    double best_score = -1.0;
    double best_h = bandwidth_grid[0];
    double best_r = radius_grid[0];

    for (const double h_bar : bandwidth_grid) {
        const std::vector<double> rho = local_density(dissim, h_bar * d_star, threads);
        const std::vector<double> rho_bar = normalized_density(rho, base.density_exponent);
        const std::vector<double> nearest = nearest_denser_distance(dissim, rho, threads);
        for (const double r_bar : radius_grid) {
            const double r = r_bar * d_star;
            std::vector<double> scores(m);
            for (std::size_t i = 0; i < m; ++i) {
                const double ldi = nearest[i] <= r ? nearest[i] / r : 1.0;
                scores[i] = gamma_center(rho_bar[i], ldi);
            }
            const auto sorted = stable_sort_descending(scores);
            const auto rule = apply_gap_rule(sorted.values);
            const double score = rule.tau_star < base.tau_min ? 0.0 : rule.tau_star;
            const bool better =
                score > best_score ||
                (score == best_score &&
                 (h_bar < best_h || (h_bar == best_h && r_bar < best_r)));
            if (better) {
                best_score = score;
                best_h = h_bar;
                best_r = r_bar;
            }
        }
    }

    GridSearchResult out;
    out.bandwidth_scale = best_h;
    out.radius_scale = best_r;
    LdpsParams chosen = base;
    chosen.bandwidth_scale = best_h;
    chosen.radius_scale = best_r;
    out.profile = search_peaks(dissim, chosen, threads);
    return out;
}

CfsfdpProfile cfsfdp_baseline(const DissimilarityMatrix& dissim, double cutoff) {
    require(std::isfinite(cutoff) && cutoff > 0.0, errc::invalid_cutoff,
            "cutoff distance must be positive");
    const std::size_t m = dissim.size();
    CfsfdpProfile profile;
    profile.rho_cutoff.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
        const auto row = dissim.row(i);
        int count = 0;
        for (std::size_t j = 0; j < m; ++j) {
            if (j != i && row[j] < cutoff) ++count;
        }
        profile.rho_cutoff[i] = count;
    }
    profile.gdi.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
        const auto row = dissim.row(i);
        double nearest_denser = std::numeric_limits<double>::infinity();
        double farthest = 0.0;
        for (std::size_t j = 0; j < m; ++j) {
            farthest = std::max(farthest, row[j]);
            if (profile.rho_cutoff[j] > profile.rho_cutoff[i]) {
                nearest_denser = std::min(nearest_denser, row[j]);
            }
        }
        profile.gdi[i] = std::isinf(nearest_denser) ? farthest : nearest_denser;
    }
    profile.gamma.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
        profile.gamma[i] = static_cast<double>(profile.rho_cutoff[i]) * profile.gdi[i];
    }
    auto sorted = stable_sort_descending(profile.gamma);
    profile.sorted_order = std::move(sorted.order);
    auto rule = apply_gap_rule(sorted.values);
    profile.gaps = std::move(rule.gaps);
    profile.tau_star = rule.tau_star;
    profile.estimated_k = static_cast<int>(rule.k);
    return profile;
}

} // namespace ldps
