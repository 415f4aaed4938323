#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "density.hpp"
#include "geometry.hpp"

namespace nugg {

// Generation parameters. alpha < 0 selects the automatic connectivity radius
// (smallest constant radius that keeps the sample connected, times 1.0001);
// beta and eps default to 3 * alpha and alpha / 10 when negative.
struct HubConfig {
    long N = 0;
    long hubs = 0;  // number of hub seed nodes
    double alpha = -1.0;
    double beta = -1.0;
    double eps = -1.0;
    std::uint64_t seed = 0;
};

// Which pairwise path builds the edge set. Auto switches from the O(N^2)
// scan to a bucket index above 20000 nodes (circle and disk); both paths
// produce identical edge sets.
enum class EdgePath { Auto, BruteForce, Indexed };

struct GeometricGraph {
    LatentSpace space;
    std::vector<Point> positions;
    std::vector<double> rho;       // true sampling density at each node
    std::vector<std::uint8_t> hub;
    std::vector<double> radius;    // alpha or alpha + beta
    std::vector<std::pair<int, int>> edges;  // i < j, sorted
    std::vector<int> hub_seeds;
    double alpha = 0.0, beta = 0.0, eps = 0.0;
    std::uint64_t seed = 0;

    long num_nodes() const { return static_cast<long>(positions.size()); }
    long num_edges() const { return static_cast<long>(edges.size()); }
    std::vector<int> degrees() const;
    std::vector<std::vector<int>> adjacency() const;  // sorted neighbor lists
};

GeometricGraph generate(const LatentSpace& space, const AngularDensity& density,
                        const HubConfig& cfg, EdgePath path = EdgePath::Auto);

// Longest edge of a minimum spanning tree over the pairwise distances (the
// minimal constant radius connecting the sample), times a 1.0001 headroom.
double auto_alpha(std::span<const Point> positions, const LatentSpace& space);

// Edge set under d(x_i, x_j) <= max(radius_i, radius_j), i < j pairs sorted.
std::vector<std::pair<int, int>> build_edges(const LatentSpace& space,
                                             std::span<const Point> positions,
                                             std::span<const double> radius,
                                             EdgePath path = EdgePath::Auto);

}  // namespace nugg
