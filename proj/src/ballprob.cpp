#include "ballprob.hpp"

#include <algorithm>
#include <cmath>

#include "error.hpp"
#include "numeric.hpp"

namespace nugg {

namespace {

const SpectrallyBounded& require_series(const AngularDensity& density, const char* where) {
    const auto* s = density.sbrv();
    if (!s)
        fail(Errc::capability,
             std::string(where) + ": closed form needs a cosine-series density (convert first)");
    return *s;
}

// numeric integral of the density over [a, b]; deliberately ignores the
// series closed form so it can serve as an independent reference. The span
// is pre-segmented so oscillatory series cannot alias the quadrature rule.
double angular_integral(const AngularDensity& density, double a, double b, double tol) {
    std::vector<double> cuts;
    const int segments = static_cast<int>(std::ceil((b - a) / 0.35));
    for (int k = 1; k < segments; ++k) cuts.push_back(a + (b - a) * k / segments);
    return integrate_split([&](double t) { return density(t); }, a, b, cuts, tol);
}

double circle_closed_form(const SpectrallyBounded& s, double theta_c, double alpha) {
    if (alpha >= M_PI) return 1.0;
    double p = 2.0 * alpha / (2.0 * M_PI);
    for (const auto& h : s.harmonics())
        p += 2.0 * h.amp / h.n * std::cos(h.n * (theta_c - h.mu)) * std::sin(h.n * alpha);
    return p;
}

// Semi-ellipse approximation of int h(r) dr over the radial extent of the
// ball, with the part of the ellipse sticking out past the unit rim removed.
double ellipse_integral(double r_c, double alpha, double h_at_far, double h_at_center) {
    double v = 0.5 * M_PI * std::min(alpha, r_c) * h_at_far;
    if (r_c + alpha > 1.0) {
        const double x = (1.0 - r_c) / alpha;
        v -= 0.5 * h_at_center *
             (alpha * std::acos(std::clamp(x, -1.0, 1.0)) -
              x * std::sqrt(std::max(alpha * alpha - (1.0 - r_c) * (1.0 - r_c), 0.0)));
    }
    return v;
}

// cos of the half angular width of the disk ball boundary at radius r
double disk_cos_halfwidth(double r, double r_c, double alpha) {
    return (r * r + r_c * r_c - alpha * alpha) / (2.0 * r * r_c);
}

double disk_closed_form(const SpectrallyBounded& s, const Point& center, double alpha) {
    const double r_c = center.r;
    if (alpha <= 0.0) return 0.0;
    if (r_c < 1e-12) return std::min(alpha, 1.0) * std::min(alpha, 1.0);

    auto f_harmonic = [&](int n, double r) {
        const double z = std::clamp(disk_cos_halfwidth(r, r_c, alpha), -1.0, 1.0);
        return r * std::sqrt(1.0 - z * z) * chebyshev_u(n - 1, z);
    };
    auto g = [&](double r) {
        const double z = std::clamp(disk_cos_halfwidth(r, r_c, alpha), -1.0, 1.0);
        return r * std::acos(z);
    };

    const double far = std::max(alpha, r_c);
    double p = 4.0 / (2.0 * M_PI) * ellipse_integral(r_c, alpha, g(far), g(r_c));
    for (const auto& h : s.harmonics())
        p += 4.0 * h.amp / h.n * std::cos(h.n * (center.theta - h.mu)) *
             ellipse_integral(r_c, alpha, f_harmonic(h.n, far), f_harmonic(h.n, r_c));
    const double inner = std::max(0.0, alpha - r_c);
    p += inner * inner;
    return p;
}

double hyperbolic_closed_form(const LatentSpace& space, const AngularDensity& density,
                              const Point& center, double alpha) {
    return 8.0 * std::exp(0.5 * (alpha - space.R - center.r)) * density(center.theta);
}

// Quadrature path: outer radial integral of the angular sweep admitted by
// the ball at each radius.
double quadrature_2d(const LatentSpace& space, const AngularDensity& density, const Point& center,
                     double alpha) {
    const double rmax = space.radial_max();
    const double r_c = center.r;
    const RadialLaw law = RadialLaw::of(space);
    const double lo = std::max(0.0, r_c - alpha);
    const double hi = std::min(rmax, r_c + alpha);

    auto cos_halfwidth = [&](double r) -> double {
        switch (space.kind) {
            case SpaceKind::UnitDisk: return disk_cos_halfwidth(r, r_c, alpha);
            case SpaceKind::Sphere2: {
                const double s = std::sin(r) * std::sin(r_c);
                if (s == 0.0) return (std::cos(std::min(alpha, M_PI)) - std::cos(r) * std::cos(r_c) <= 0.0) ? -1.0 : 1.0;
                return (std::cos(alpha) - std::cos(r) * std::cos(r_c)) / s;
            }
            case SpaceKind::HyperbolicDisk: {
                const double s = std::sinh(r) * std::sinh(r_c);
                if (s == 0.0) return (std::cosh(r) * std::cosh(r_c) - std::cosh(alpha) <= 0.0) ? -1.0 : 1.0;
                return (std::cosh(r) * std::cosh(r_c) - std::cosh(alpha)) / s;
            }
            default: return 1.0;
        }
    };

    auto shell = [&](double r) {
        const double z = std::clamp(cos_halfwidth(r), -1.0, 1.0);
        const double half = std::acos(z);
        if (half <= 0.0) return 0.0;
        return law.pdf(r) * angular_integral(density, center.theta - half, center.theta + half, 1e-12);
    };
    // the angular sweep kinks where the ball starts covering full rings; on
    // the sphere that also happens across the far pole
    std::vector<double> kinks{std::abs(alpha - r_c)};
    if (space.kind == SpaceKind::Sphere2) kinks.push_back(2.0 * M_PI - alpha - r_c);
    return integrate_ball_slice(shell, r_c, alpha, lo, hi, kinks, 1e-9);
}

}  // namespace

double ball_probability(const LatentSpace& space, const AngularDensity& density,
                        const Point& center, double alpha, ProbMethod method) {
    if (!(alpha >= 0.0)) fail(Errc::domain, "ball_probability: alpha must be >= 0");
    check_point(space, center);
    if (alpha == 0.0) return 0.0;

    if (method == ProbMethod::Quadrature) {
        if (space.kind == SpaceKind::UnitCircle) {
            const double a = std::min(alpha, M_PI);
            return angular_integral(density, center.theta - a, center.theta + a, 1e-11);
        }
        return quadrature_2d(space, density, center, alpha);
    }

    switch (space.kind) {
        case SpaceKind::UnitCircle:
            return circle_closed_form(require_series(density, "ball_probability[s1]"), center.theta,
                                      alpha);
        case SpaceKind::UnitDisk:
            return disk_closed_form(require_series(density, "ball_probability[disk]"), center, alpha);
        case SpaceKind::HyperbolicDisk:
            return hyperbolic_closed_form(space, density, center, alpha);
        case SpaceKind::Sphere2:
            fail(Errc::capability, "ball_probability: no closed form on the sphere; use quadrature");
    }
    return 0.0;
}

double expected_degree(const LatentSpace& space, const AngularDensity& density, const Point& p,
                       double alpha, double N, ProbMethod method) {
    return N * ball_probability(space, density, p, alpha, method);
}

double expected_average_degree(const LatentSpace& space, const AngularDensity& density,
                               double alpha, double N) {
    if (!(alpha >= 0.0)) fail(Errc::domain, "expected_average_degree: alpha must be >= 0");
    const SpectrallyBounded& s = require_series(density, "expected_average_degree");
    const double dc = 1.0 / (2.0 * M_PI);
    double pair_sum = 0.0;  // sum over harmonic pairs with equal frequency
    double pair_sum_sinc = 0.0;
    for (const auto& hi : s.harmonics())
        for (const auto& hj : s.harmonics()) {
            if (hi.n != hj.n) continue;
            const double w = hi.amp * hj.amp * std::cos(hi.n * (hi.mu - hj.mu));
            pair_sum += w;
            pair_sum_sinc += w * std::sin(hi.n * alpha) / hi.n;
        }
    switch (space.kind) {
        case SpaceKind::UnitCircle:
            return N * (4.0 * M_PI * alpha * dc * dc + 2.0 * M_PI * pair_sum_sinc);
        case SpaceKind::UnitDisk:
            return 2.0 * M_PI * M_PI * alpha * alpha * N * (pair_sum + 2.0 * dc * dc);
        case SpaceKind::HyperbolicDisk:
            return 16.0 * M_PI * N * std::exp(0.5 * (alpha - 2.0 * space.R)) *
                   (pair_sum + 2.0 * dc * dc);
        case SpaceKind::Sphere2:
            fail(Errc::capability, "expected_average_degree: no closed form on the sphere");
    }
    return 0.0;
}

}  // namespace nugg
