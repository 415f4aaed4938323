#pragma once

#include <string>

namespace nugg {

enum class SpaceKind { UnitCircle, UnitDisk, Sphere2, HyperbolicDisk };

SpaceKind space_kind_from_string(const std::string& s);  // s1, disk, sphere, hyperbolic
std::string to_string(SpaceKind k);

// Latent metric-probability space. Distances and polar coordinates follow the
// usual conventions for the circle, euclidean disk, sphere surface and
// hyperbolic disk. The reference measure is the normalized area (arc length
// on the circle).
struct LatentSpace {
    SpaceKind kind;
    double R;  // 1 for UnitDisk, free for HyperbolicDisk, unused otherwise

    static LatentSpace unit_circle() { return {SpaceKind::UnitCircle, 0.0}; }
    static LatentSpace unit_disk() { return {SpaceKind::UnitDisk, 1.0}; }
    static LatentSpace sphere2() { return {SpaceKind::Sphere2, 0.0}; }
    static LatentSpace hyperbolic_disk(double radius);

    bool has_radial() const { return kind != SpaceKind::UnitCircle; }
    double radial_max() const;    // admissible upper bound of the radial coordinate
    double diameter() const;      // metric diameter of the space
    double total_measure() const; // unnormalized total measure (2pi, pi, 4pi, ...)
    // area element jacobian at radius r (1, r, sin r, sinh r)
    double radial_jacobian(double r) const;
};

// Point in polar coordinates; theta canonicalized to [-pi, pi) on
// construction, r is the radial coordinate (colatitude on the sphere),
// ignored on the circle.
struct Point {
    double theta = 0.0;
    double r = 0.0;
};

// reduce an angle mod 2pi into [-pi, pi)
double wrap_angle(double theta);

Point make_point(const LatentSpace& space, double theta, double r = 0.0);

// validates the point against the space domain (Errc::domain on failure)
void check_point(const LatentSpace& space, const Point& p);

double distance(const LatentSpace& space, const Point& p, const Point& q);

// Measure of a metric ball of radius alpha, capped at the total measure of
// the space. Raw by default; normalized divides by the total measure.
double ball_measure(const LatentSpace& space, double alpha, bool normalized = false);

}  // namespace nugg
