#include "geometry.hpp"

#include <algorithm>
#include <cmath>

#include "error.hpp"

namespace nugg {

SpaceKind space_kind_from_string(const std::string& s) {
    if (s == "s1" || s == "circle") return SpaceKind::UnitCircle;
    if (s == "disk") return SpaceKind::UnitDisk;
    if (s == "sphere") return SpaceKind::Sphere2;
    if (s == "hyperbolic") return SpaceKind::HyperbolicDisk;
    fail(Errc::invalid, "unknown space kind: " + s);
}

std::string to_string(SpaceKind k) {
    switch (k) {
        case SpaceKind::UnitCircle: return "s1";
        case SpaceKind::UnitDisk: return "disk";
        case SpaceKind::Sphere2: return "sphere";
        case SpaceKind::HyperbolicDisk: return "hyperbolic";
    }
    return "?";
}

LatentSpace LatentSpace::hyperbolic_disk(double radius) {
    if (!(radius > 0.0)) fail(Errc::domain, "hyperbolic disk radius must be positive");
    return {SpaceKind::HyperbolicDisk, radius};
}

double LatentSpace::radial_max() const {
    switch (kind) {
        case SpaceKind::UnitCircle: return 0.0;
        case SpaceKind::UnitDisk: return 1.0;
        case SpaceKind::Sphere2: return M_PI;
        case SpaceKind::HyperbolicDisk: return R;
    }
    return 0.0;
}

double LatentSpace::diameter() const {
    switch (kind) {
        case SpaceKind::UnitCircle: return M_PI;
        case SpaceKind::UnitDisk: return 2.0;
        case SpaceKind::Sphere2: return M_PI;
        case SpaceKind::HyperbolicDisk: return 2.0 * R;
    }
    return 0.0;
}

double LatentSpace::total_measure() const {
    switch (kind) {
        case SpaceKind::UnitCircle: return 2.0 * M_PI;
        case SpaceKind::UnitDisk: return M_PI;
        case SpaceKind::Sphere2: return 4.0 * M_PI;
        case SpaceKind::HyperbolicDisk: return 2.0 * M_PI * (std::cosh(R) - 1.0);
    }
    return 0.0;
}

double LatentSpace::radial_jacobian(double r) const {
    switch (kind) {
        case SpaceKind::UnitCircle: return 1.0;
        case SpaceKind::UnitDisk: return r;
        case SpaceKind::Sphere2: return std::sin(r);
        case SpaceKind::HyperbolicDisk: return std::sinh(r);
    }
    return 0.0;
}

double wrap_angle(double theta) {
    double t = std::remainder(theta, 2.0 * M_PI);  // in [-pi, pi]
    if (t >= M_PI) t = -M_PI;
    return t;
}

Point make_point(const LatentSpace& space, double theta, double r) {
    Point p{wrap_angle(theta), space.has_radial() ? r : 0.0};
    check_point(space, p);
    return p;
}

void check_point(const LatentSpace& space, const Point& p) {
    if (!std::isfinite(p.theta) || !std::isfinite(p.r))
        fail(Errc::domain, "point coordinates must be finite");
    if (!space.has_radial()) return;
    const double rmax = space.radial_max();
    if (p.r < 0.0 || p.r > rmax * (1.0 + 1e-12))
        fail(Errc::domain, "radial coordinate outside space domain");
}

namespace {

double clamped_acos(double x) { return std::acos(std::clamp(x, -1.0, 1.0)); }

// arccosh with the argument clamped to >= 1: nearly-identical points can
// produce arguments slightly below 1 through roundoff.
double clamped_acosh(double x) { return std::acosh(std::max(x, 1.0)); }

}  // namespace

double distance(const LatentSpace& space, const Point& p, const Point& q) {
    check_point(space, p);
    check_point(space, q);
    const double dth = p.theta - q.theta;
    switch (space.kind) {
        case SpaceKind::UnitCircle:
            return M_PI - std::abs(M_PI - std::abs(dth));
        case SpaceKind::UnitDisk: {
            const double d2 = p.r * p.r + q.r * q.r - 2.0 * p.r * q.r * std::cos(dth);
            return std::sqrt(std::max(d2, 0.0));
        }
        case SpaceKind::Sphere2:
            return clamped_acos(std::cos(p.r) * std::cos(q.r) +
                                std::sin(p.r) * std::sin(q.r) * std::cos(dth));
        case SpaceKind::HyperbolicDisk:
            return clamped_acosh(std::cosh(p.r) * std::cosh(q.r) -
                                 std::sinh(p.r) * std::sinh(q.r) * std::cos(dth));
    }
    return 0.0;
}

double ball_measure(const LatentSpace& space, double alpha, bool normalized) {
    if (!(alpha >= 0.0)) fail(Errc::domain, "ball radius must be non-negative");
    double raw = 0.0;
    switch (space.kind) {
        case SpaceKind::UnitCircle: raw = 2.0 * alpha; break;
        case SpaceKind::UnitDisk: raw = M_PI * alpha * alpha; break;
        case SpaceKind::Sphere2: raw = 2.0 * M_PI * (1.0 - std::cos(std::min(alpha, M_PI))); break;
        case SpaceKind::HyperbolicDisk: raw = 2.0 * M_PI * (std::cosh(alpha) - 1.0); break;
    }
    raw = std::min(raw, space.total_measure());
    return normalized ? raw / space.total_measure() : raw;
}

}  // namespace nugg
