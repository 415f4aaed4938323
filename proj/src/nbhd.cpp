#include "nbhd.hpp"

#include <algorithm>
#include <cmath>

#include "error.hpp"
#include "numeric.hpp"

namespace nugg {

namespace {

constexpr double kTwoPi = 2.0 * M_PI;

// split an interval [lo, hi] (length <= 2 pi) into canonical pieces
void push_canonical(std::vector<std::pair<double, double>>& out, double lo, double hi) {
    if (hi - lo >= kTwoPi) {
        out.emplace_back(-M_PI, M_PI);
        return;
    }
    const double len = hi - lo;
    lo = wrap_angle(lo);
    hi = lo + len;
    if (hi <= M_PI) {
        out.emplace_back(lo, hi);
    } else {
        out.emplace_back(lo, M_PI);
        out.emplace_back(-M_PI, hi - kTwoPi);
    }
}

}  // namespace

ArcSet ArcSet::from_pieces(std::vector<std::pair<double, double>> raw) {
    ArcSet s;
    if (raw.empty()) return s;
    std::sort(raw.begin(), raw.end());
    for (const auto& piece : raw) {
        if (!s.arcs_.empty() && piece.first <= s.arcs_.back().second)
            s.arcs_.back().second = std::max(s.arcs_.back().second, piece.second);
        else
            s.arcs_.push_back(piece);
    }
    // arcs touching across the seam stay split; length/contains are unaffected
    return s;
}

ArcSet ArcSet::from_balls(const std::vector<double>& centers, double radius) {
    if (radius < 0.0) fail(Errc::domain, "arc radius must be >= 0");
    std::vector<std::pair<double, double>> raw;
    for (double c : centers) push_canonical(raw, c - radius, c + radius);
    return from_pieces(std::move(raw));
}

double ArcSet::length() const {
    double s = 0.0;
    for (const auto& [a, b] : arcs_) s += b - a;
    return s;
}

bool ArcSet::contains(double theta) const {
    const double t = wrap_angle(theta);
    for (const auto& [a, b] : arcs_)
        if (t >= a && t <= b) return true;
    // the seam point pi is represented as -pi
    return false;
}

ArcSet ArcSet::intersect_ball(double center, double radius) const {
    std::vector<std::pair<double, double>> ball;
    push_canonical(ball, center - radius, center + radius);
    std::vector<std::pair<double, double>> raw;
    for (const auto& [ba, bb] : ball)
        for (const auto& [a, b] : arcs_) {
            const double lo = std::max(a, ba), hi = std::min(b, bb);
            if (lo < hi) raw.emplace_back(lo, hi);
        }
    return from_pieces(std::move(raw));
}

ArcSet ArcSet::union_with(const ArcSet& other) const {
    std::vector<std::pair<double, double>> raw = arcs_;
    raw.insert(raw.end(), other.arcs_.begin(), other.arcs_.end());
    return from_pieces(std::move(raw));
}

std::vector<double> ArcSet::endpoints() const {
    std::vector<double> pts;
    for (const auto& [a, b] : arcs_) {
        pts.push_back(a);
        pts.push_back(b);
    }
    return pts;
}

RadiusField RadiusField::with_hubs(double alpha, double beta, ArcSet hub_arcs) {
    if (!(alpha > 0.0) || beta < 0.0) fail(Errc::invalid, "radius field: bad alpha/beta");
    return {alpha, beta, std::move(hub_arcs)};
}

RadiusField RadiusField::of_graph(const GeometricGraph& g) {
    if (g.hub_seeds.empty()) return constant(g.alpha);
    if (g.space.kind != SpaceKind::UnitCircle)
        fail(Errc::capability, "radius field with hubs is supported on the circle only");
    std::vector<double> centers;
    for (int s : g.hub_seeds) centers.push_back(g.positions[s].theta);
    return with_hubs(g.alpha, g.beta, ArcSet::from_balls(centers, g.eps));
}

double domain_ball_measure(const LatentSpace& space, const Point& p, double alpha) {
    if (!(alpha >= 0.0)) fail(Errc::domain, "ball radius must be >= 0");
    check_point(space, p);
    switch (space.kind) {
        case SpaceKind::UnitCircle: return std::min(2.0 * alpha, kTwoPi) / kTwoPi;
        case SpaceKind::Sphere2: return 0.5 * (1.0 - std::cos(std::min(alpha, M_PI)));
        case SpaceKind::UnitDisk: {
            const double d = p.r;
            if (d + alpha <= 1.0) return alpha * alpha;  // pi a^2 / pi
            if (d <= std::abs(1.0 - alpha)) return alpha <= 1.0 ? alpha * alpha : 1.0;
            // circle-circle lens, normalized by the disk area
            const double a2 = alpha * alpha;
            const double part1 = a2 * std::acos(std::clamp((d * d + a2 - 1.0) / (2.0 * d * alpha), -1.0, 1.0));
            const double part2 = std::acos(std::clamp((d * d + 1.0 - a2) / (2.0 * d), -1.0, 1.0));
            const double s = (-d + alpha + 1.0) * (d + alpha - 1.0) * (d - alpha + 1.0) * (d + alpha + 1.0);
            const double part3 = 0.5 * std::sqrt(std::max(s, 0.0));
            return (part1 + part2 - part3) / M_PI;
        }
        case SpaceKind::HyperbolicDisk: {
            const double R = space.R;
            const double total = kTwoPi * (std::cosh(R) - 1.0);
            if (p.r + alpha <= R) return kTwoPi * (std::cosh(alpha) - 1.0) / total;
            const double lo = std::max(0.0, p.r - alpha);
            const double chr = std::cosh(p.r), shr = std::sinh(p.r), cha = std::cosh(alpha);
            auto width = [&](double r) {
                const double s = std::sinh(r) * shr;
                double z = s == 0.0 ? -1.0 : (std::cosh(r) * chr - cha) / s;
                return 2.0 * std::acos(std::clamp(z, -1.0, 1.0));
            };
            const double kink[] = {std::abs(alpha - p.r)};
            const double area = integrate_ball_slice([&](double r) { return std::sinh(r) * width(r); },
                                                     p.r, alpha, lo, R, kink, 1e-10);
            return area / total;
        }
    }
    return 0.0;
}

double neighborhood_measure(const LatentSpace& space, const RadiusField& field, const Point& p) {
    if (field.is_constant()) return domain_ball_measure(space, p, field.alpha);
    if (space.kind != SpaceKind::UnitCircle)
        fail(Errc::capability, "hub radius fields are supported on the circle only");
    if (field.is_hub(p.theta))
        return std::min(2.0 * (field.alpha + field.beta), kTwoPi) / kTwoPi;
    if (2.0 * field.alpha >= kTwoPi) return 1.0;
    const double big = field.hubs.intersect_ball(p.theta, field.alpha + field.beta).length();
    const double small = field.hubs.intersect_ball(p.theta, field.alpha).length();
    return (2.0 * field.alpha + big - small) / kTwoPi;
}

std::vector<double> neighborhood_volumes(const GeometricGraph& g) {
    const RadiusField field = RadiusField::of_graph(g);
    std::vector<double> vol;
    vol.reserve(g.positions.size());
    for (const auto& p : g.positions) vol.push_back(neighborhood_measure(g.space, field, p));
    return vol;
}

}  // namespace nugg
