#pragma once

#include <optional>
#include <span>
#include <vector>

#include "graphgen.hpp"

namespace nugg {

enum class EstimateMethod { DegreeOnly, DegreeOverVolume };

// Degree-based density estimate. Entries of `defined` are 0 for zero-degree
// nodes, whose estimate is the sentinel 0 and which are excluded from the
// inverse-mean normalization.
struct DensityEstimate {
    std::vector<double> rho_hat;
    std::vector<std::uint8_t> defined;
    EstimateMethod method;
};

// With neighborhood volumes: rho_hat_i = (deg_i / N) / volume_i. Without:
// rho_hat proportional to the degree, rescaled so that mean(1/rho_hat) = 1
// over the defined entries.
DensityEstimate estimate_density(const GeometricGraph& g,
                                 std::optional<std::span<const double>> volumes = std::nullopt);

struct PnetFeatures {
    std::vector<double> inv_degree;                // 1 / deg_i
    std::vector<double> inv_mean_neighbor_degree;  // 1 / mean_{j ~ i} deg_j
    std::vector<std::uint8_t> isolated;            // sentinel (0, 0) rows
};

PnetFeatures pnet_features(const GeometricGraph& g);

// Rescale a positive sequence so the mean of the reciprocals is exactly 1.
std::vector<double> normalize_inverse_mean(std::span<const double> rho);

}  // namespace nugg
