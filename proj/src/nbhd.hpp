#pragma once

#include <vector>

#include "geometry.hpp"
#include "graphgen.hpp"

namespace nugg {

// Union of closed arcs on the circle, kept as disjoint sorted pieces inside
// [-pi, pi) (arcs across the seam are split).
class ArcSet {
public:
    ArcSet() = default;

    static ArcSet from_balls(const std::vector<double>& centers, double radius);

    bool empty() const { return arcs_.empty(); }
    double length() const;
    bool contains(double theta) const;
    ArcSet intersect_ball(double center, double radius) const;
    ArcSet union_with(const ArcSet& other) const;

    const std::vector<std::pair<double, double>>& pieces() const { return arcs_; }
    std::vector<double> endpoints() const;

private:
    static ArcSet from_pieces(std::vector<std::pair<double, double>> raw);
    std::vector<std::pair<double, double>> arcs_;
};

// Neighborhood radius over the space: a base radius alpha everywhere, raised
// to alpha + beta on a union of hub arcs (circle only; other spaces use the
// constant field).
struct RadiusField {
    double alpha = 0.0;
    double beta = 0.0;
    ArcSet hubs;

    static RadiusField constant(double alpha) { return {alpha, 0.0, {}}; }
    static RadiusField with_hubs(double alpha, double beta, ArcSet hub_arcs);
    static RadiusField of_graph(const GeometricGraph& g);

    bool is_constant() const { return hubs.empty(); }
    bool is_hub(double theta) const { return hubs.contains(theta); }
    double radius_at(double theta) const { return is_hub(theta) ? alpha + beta : alpha; }
};

// Normalized reference measure of the metric ball of radius alpha about p,
// intersected with the space domain (exact on circle/disk/sphere, a radial
// quadrature on the hyperbolic disk).
double domain_ball_measure(const LatentSpace& space, const Point& p, double alpha);

// Normalized measure of the neighborhood N(p) = {y : d(p,y) <= max(r(p), r(y))}
// under the field.
double neighborhood_measure(const LatentSpace& space, const RadiusField& field, const Point& p);

// Per-node neighborhood volumes of a generated graph (hub-aware on the
// circle; constant-radius graphs on any space).
std::vector<double> neighborhood_volumes(const GeometricGraph& g);

}  // namespace nugg
