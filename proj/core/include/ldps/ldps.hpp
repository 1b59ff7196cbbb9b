#pragma once

#include <span>
#include <vector>

#include "ldps/types.hpp"

namespace ldps {

/// Per-point quantities produced by the local density peaks search.
///
/// `sorted_order` lists point indices by descending center score; `gaps[i]`
/// is the drop from the (i+1)-th to the (i+2)-th sorted score, with a final
/// gap from the last score down to zero so a dataset in which every point is
/// its own peak can still estimate k = m. `estimated_k` is the argmax gap
/// position (smallest on ties), or -1 when that gap falls below tau_min.
struct LdpsProfile {
    std::vector<double> rho;            // kernel density estimate
    std::vector<double> rho_bar;        // (rho / max rho)^density_exponent, max = 1
    std::vector<double> ldi;            // local distinctiveness index, in (0, 1]
    std::vector<double> gamma_center;   // center score, in [0, 1]
    std::vector<double> gamma_outlier;  // outlier score, in [0, 1]
    std::vector<std::size_t> sorted_order;
    std::vector<double> gaps;           // size m, last entry is the score itself
    int estimated_k = -1;
    std::vector<std::size_t> peak_indices;
    double tau_star = 0.0;
};

/// Gaussian-kernel density over a dissimilarity row:
/// rho_i = 1/(m h) * sum_j K(d_ij / h), K(z) = exp(-z^2/2)/sqrt(2 pi).
/// The j = i self term is included; it shifts every density equally.
std::vector<double> local_density(const DissimilarityMatrix& dissim, double bandwidth,
                                  unsigned threads = 1);

/// Distance from each point to its nearest strictly denser point, excluding
/// zero-dissimilarity pairs (they are outside every r-neighborhood).
/// Infinity when no denser point exists. Equal densities never dominate.
std::vector<double> nearest_denser_distance(const DissimilarityMatrix& dissim,
                                            std::span<const double> rho, unsigned threads = 1);

/// Local distinctiveness index: with N_r(i) = { j : 0 < d_ij <= r } and
/// LDIS(i) = { j in N_r(i) : rho_j > rho_i },
///   ldi_i = 1 when LDIS(i) is empty, else min_{j in LDIS(i)} d_ij / r.
std::vector<double> local_distinctiveness_index(const DissimilarityMatrix& dissim,
                                                std::span<const double> rho, double radius,
                                                unsigned threads = 1);

/// Center score (1 - (1-rho_bar)^2/2 - (1-ldi)^2/2)^2: increasing in both
/// arguments, highest for balanced high-density high-LDI points.
double gamma_center(double rho_bar, double ldi);
std::vector<double> gamma_center(std::span<const double> rho_bar, std::span<const double> ldi);

/// Outlier score (1 - rho_bar^2/2 - (1-ldi)^2/2)^2: decreasing in density,
/// increasing in LDI, so isolated low-density points score near 1.
double gamma_outlier(double rho_bar, double ldi);
std::vector<double> gamma_outlier(std::span<const double> rho_bar, std::span<const double> ldi);

/// Full peak search at one parameter point: density, LDI, center scores,
/// descending sort, gaps, gap-rule estimate of k and the peak index set.
LdpsProfile search_peaks(const DissimilarityMatrix& dissim, const LdpsParams& params,
                         unsigned threads = 1);

struct SeedSelection {
    std::vector<std::size_t> indices;  // first k_star entries of sorted_order
    double tau_star;                   // gap right after the selected block
};

/// The k_star points with the leading center scores, plus the gap at k_star.
SeedSelection select_seeds(const LdpsProfile& profile, std::size_t k_star);

/// Points with gamma_outlier strictly above `threshold`, excluding `exclude`
/// (selected seeds are never reported as outliers). Ascending indices.
std::vector<std::size_t> detect_outliers(const LdpsProfile& profile, double threshold,
                                         std::span<const std::size_t> exclude);
std::vector<std::size_t> detect_outliers(const LdpsProfile& profile, double threshold);

struct GridSearchResult {
    double bandwidth_scale = 0.0;
    double radius_scale = 0.0;
    LdpsProfile profile;
};

/// Inclusive linear grid with `count` points (count = 1 gives `start`).
std::vector<double> linear_grid(double start, double stop, std::size_t count);
std::vector<double> default_bandwidth_grid();  // 0.02 .. 0.2, 10 points
std::vector<double> default_radius_grid();     // 0.05 .. 0.5, 10 points

/// Evaluates search_peaks over every (h-bar, r-bar) pair and keeps the pair
/// with the largest tau-star (failed estimates score 0; ties prefer smaller
/// h-bar, then smaller r-bar). Density and nearest-denser distances are
/// shared across the radius axis, so the scan costs two matrix passes per
/// bandwidth rather than two per cell.
GridSearchResult grid_search_theta(const DissimilarityMatrix& dissim,
                                   std::span<const double> bandwidth_grid,
                                   std::span<const double> radius_grid,
                                   const LdpsParams& base, unsigned threads = 1);

/// Cutoff-density baseline profile (density peaks via chi(d_ij - d_c)).
struct CfsfdpProfile {
    std::vector<int> rho_cutoff;        // neighbors strictly inside d_c, self excluded
    std::vector<double> gdi;            // distance to nearest denser point;
                                        // max_j d_ij when no denser point exists
    std::vector<double> gamma;          // rho * gdi
    std::vector<std::size_t> sorted_order;
    std::vector<double> gaps;
    int estimated_k = -1;
    double tau_star = 0.0;
};

CfsfdpProfile cfsfdp_baseline(const DissimilarityMatrix& dissim, double cutoff);

} // namespace ldps
