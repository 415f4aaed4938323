#include "graphgen.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "error.hpp"

namespace nugg {

std::vector<int> GeometricGraph::degrees() const {
    std::vector<int> deg(positions.size(), 0);
    for (const auto& [i, j] : edges) {
        ++deg[i];
        ++deg[j];
    }
    return deg;
}

std::vector<std::vector<int>> GeometricGraph::adjacency() const {
    std::vector<std::vector<int>> adj(positions.size());
    for (const auto& [i, j] : edges) {
        adj[i].push_back(j);
        adj[j].push_back(i);
    }
    for (auto& nb : adj) std::sort(nb.begin(), nb.end());
    return adj;
}

namespace {

constexpr long kBruteForceLimit = 20000;

std::vector<std::pair<int, int>> edges_brute_force(const LatentSpace& space,
                                                   std::span<const Point> pos,
                                                   std::span<const double> radius) {
    const long n = static_cast<long>(pos.size());
    std::vector<std::pair<int, int>> edges;

    switch (space.kind) {
        case SpaceKind::UnitCircle:
            for (long i = 0; i < n; ++i)
                for (long j = i + 1; j < n; ++j) {
                    const double d = M_PI - std::abs(M_PI - std::abs(pos[i].theta - pos[j].theta));
                    if (d <= std::max(radius[i], radius[j])) edges.emplace_back(i, j);
                }
            break;
        case SpaceKind::UnitDisk:
            for (long i = 0; i < n; ++i)
                for (long j = i + 1; j < n; ++j) {
                    const double rr = std::max(radius[i], radius[j]);
                    const double d2 = pos[i].r * pos[i].r + pos[j].r * pos[j].r -
                                      2.0 * pos[i].r * pos[j].r *
                                          std::cos(pos[i].theta - pos[j].theta);
                    if (d2 <= rr * rr) edges.emplace_back(i, j);
                }
            break;
        case SpaceKind::Sphere2: {
            std::vector<double> cr(n), sr(n);
            for (long i = 0; i < n; ++i) {
                cr[i] = std::cos(pos[i].r);
                sr[i] = std::sin(pos[i].r);
            }
            for (long i = 0; i < n; ++i)
                for (long j = i + 1; j < n; ++j) {
                    const double cos_d =
                        cr[i] * cr[j] + sr[i] * sr[j] * std::cos(pos[i].theta - pos[j].theta);
                    const double rr = std::min(std::max(radius[i], radius[j]), M_PI);
                    if (cos_d >= std::cos(rr)) edges.emplace_back(i, j);
                }
            break;
        }
        case SpaceKind::HyperbolicDisk: {
            std::vector<double> ch(n), sh(n);
            for (long i = 0; i < n; ++i) {
                ch[i] = std::cosh(pos[i].r);
                sh[i] = std::sinh(pos[i].r);
            }
            for (long i = 0; i < n; ++i)
                for (long j = i + 1; j < n; ++j) {
                    const double cosh_d =
                        ch[i] * ch[j] - sh[i] * sh[j] * std::cos(pos[i].theta - pos[j].theta);
                    if (cosh_d <= std::cosh(std::max(radius[i], radius[j])))
                        edges.emplace_back(i, j);
                }
            break;
        }
    }
    return edges;
}

// circle: sweep over angle-sorted nodes; any neighbor pair lies within the
// largest radius along the arc
std::vector<std::pair<int, int>> edges_circle_window(std::span<const Point> pos,
                                                     std::span<const double> radius) {
    const long n = static_cast<long>(pos.size());
    const double rmax = *std::max_element(radius.begin(), radius.end());
    std::vector<int> order(n);
    for (long i = 0; i < n; ++i) order[i] = static_cast<int>(i);
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return pos[a].theta < pos[b].theta; });

    std::vector<std::pair<int, int>> edges;
    if (rmax >= M_PI) {  // complete graph
        for (long i = 0; i < n; ++i)
            for (long j = i + 1; j < n; ++j) edges.emplace_back(i, j);
        return edges;
    }
    for (long k = 0; k < n; ++k) {
        const int i = order[k];
        for (long step = 1; step < n; ++step) {
            const int j = order[(k + step) % n];
            double gap = pos[j].theta - pos[i].theta;
            if (gap < 0.0) gap += 2.0 * M_PI;
            if (gap > rmax) break;
            const double d = M_PI - std::abs(M_PI - gap);
            if (d <= std::max(radius[i], radius[j]))
                edges.emplace_back(std::min(i, j), std::max(i, j));
        }
    }
    // forward sweep visits each unordered pair once per direction gap <= rmax;
    // a pair can appear from both sides only when the two arcs both fit
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    return edges;
}

// disk: uniform grid hashing on cartesian coordinates, query radius = rmax
std::vector<std::pair<int, int>> edges_disk_grid(std::span<const Point> pos,
                                                 std::span<const double> radius) {
    const long n = static_cast<long>(pos.size());
    const double rmax = *std::max_element(radius.begin(), radius.end());
    const double cell = std::max(rmax, 1e-9);
    const int ncell = std::max(1, static_cast<int>(std::floor(2.0 / cell)));
    const double cw = 2.0 / ncell;

    std::vector<double> x(n), y(n);
    std::vector<int> cx(n), cy(n);
    std::vector<std::vector<int>> buckets(static_cast<std::size_t>(ncell) * ncell);
    for (long i = 0; i < n; ++i) {
        x[i] = pos[i].r * std::cos(pos[i].theta);
        y[i] = pos[i].r * std::sin(pos[i].theta);
        cx[i] = std::min(ncell - 1, std::max(0, static_cast<int>((x[i] + 1.0) / cw)));
        cy[i] = std::min(ncell - 1, std::max(0, static_cast<int>((y[i] + 1.0) / cw)));
        buckets[static_cast<std::size_t>(cx[i]) * ncell + cy[i]].push_back(static_cast<int>(i));
    }
    const int reach = static_cast<int>(std::ceil(rmax / cw));
    std::vector<std::pair<int, int>> edges;
    for (long i = 0; i < n; ++i) {
        for (int dx = -reach; dx <= reach; ++dx)
            for (int dy = -reach; dy <= reach; ++dy) {
                const int bx = cx[i] + dx, by = cy[i] + dy;
                if (bx < 0 || bx >= ncell || by < 0 || by >= ncell) continue;
                for (int j : buckets[static_cast<std::size_t>(bx) * ncell + by]) {
                    if (j <= i) continue;
                    const double ddx = x[i] - x[j], ddy = y[i] - y[j];
                    if (std::sqrt(ddx * ddx + ddy * ddy) <= std::max(radius[i], radius[j]))
                        edges.emplace_back(static_cast<int>(i), j);
                }
            }
    }
    std::sort(edges.begin(), edges.end());
    return edges;
}

}  // namespace

std::vector<std::pair<int, int>> build_edges(const LatentSpace& space,
                                             std::span<const Point> pos,
                                             std::span<const double> radius, EdgePath path) {
    if (pos.size() != radius.size()) fail(Errc::invalid, "build_edges: size mismatch");
    if (pos.empty()) return {};
    const long n = static_cast<long>(pos.size());
    bool indexed = false;
    switch (path) {
        case EdgePath::BruteForce: indexed = false; break;
        case EdgePath::Indexed: indexed = true; break;
        case EdgePath::Auto: indexed = n > kBruteForceLimit; break;
    }
    if (indexed) {
        if (space.kind == SpaceKind::UnitCircle) return edges_circle_window(pos, radius);
        if (space.kind == SpaceKind::UnitDisk) return edges_disk_grid(pos, radius);
        // no index for the sphere / hyperbolic disk; the scan is exact anyway
    }
    auto edges = edges_brute_force(space, pos, radius);
    std::sort(edges.begin(), edges.end());
    return edges;
}

double auto_alpha(std::span<const Point> positions, const LatentSpace& space) {
    const long n = static_cast<long>(positions.size());
    if (n < 2) fail(Errc::invalid, "auto_alpha: need at least 2 positions");
    // Prim over the implicit complete graph; the bottleneck edge of the MST
    // is the minimal connecting radius
    std::vector<double> best(n, std::numeric_limits<double>::infinity());
    std::vector<std::uint8_t> in_tree(n, 0);
    best[0] = 0.0;
    double bottleneck = 0.0;
    for (long iter = 0; iter < n; ++iter) {
        long u = -1;
        double bu = std::numeric_limits<double>::infinity();
        for (long i = 0; i < n; ++i)
            if (!in_tree[i] && best[i] < bu) {
                bu = best[i];
                u = i;
            }
        in_tree[u] = 1;
        bottleneck = std::max(bottleneck, bu);
        for (long v = 0; v < n; ++v)
            if (!in_tree[v]) best[v] = std::min(best[v], distance(space, positions[u], positions[v]));
    }
    return bottleneck * 1.0001;
}

GeometricGraph generate(const LatentSpace& space, const AngularDensity& density,
                        const HubConfig& cfg, EdgePath path) {
    if (cfg.N < 1) fail(Errc::invalid, "generate: N must be >= 1");
    if (cfg.hubs < 0 || cfg.hubs > cfg.N) fail(Errc::invalid, "generate: hubs must be in [0, N]");

    Rng rng(cfg.seed);
    GeometricGraph g;
    g.space = space;
    g.seed = cfg.seed;

    const auto angles = sample_angle(density, rng, cfg.N);
    std::vector<double> radii(cfg.N, 0.0);
    if (space.has_radial()) radii = sample_radius(RadialLaw::of(space), rng, cfg.N);
    g.positions.reserve(cfg.N);
    g.rho.reserve(cfg.N);
    for (long i = 0; i < cfg.N; ++i) {
        g.positions.push_back(Point{angles[i], radii[i]});
        g.rho.push_back(rho_true(density, g.positions.back()));
    }

    g.alpha = cfg.alpha;
    if (g.alpha < 0.0) {
        if (cfg.N < 2) fail(Errc::invalid, "generate: automatic alpha needs N >= 2");
        g.alpha = auto_alpha(g.positions, space);
    }
    g.beta = cfg.beta >= 0.0 ? cfg.beta : 3.0 * g.alpha;
    g.eps = cfg.eps >= 0.0 ? cfg.eps : g.alpha / 10.0;

    // hub seeds: distinct uniform node indices
    std::vector<int> perm(cfg.N);
    for (long i = 0; i < cfg.N; ++i) perm[i] = static_cast<int>(i);
    for (long i = 0; i < cfg.hubs; ++i) {
        const long j = i + static_cast<long>(rng.below(cfg.N - i));
        std::swap(perm[i], perm[j]);
    }
    g.hub_seeds.assign(perm.begin(), perm.begin() + cfg.hubs);
    std::sort(g.hub_seeds.begin(), g.hub_seeds.end());

    g.hub.assign(cfg.N, 0);
    for (int s : g.hub_seeds) {
        for (long i = 0; i < cfg.N; ++i)
            if (!g.hub[i] && distance(space, g.positions[s], g.positions[i]) <= g.eps) g.hub[i] = 1;
    }

    g.radius.resize(cfg.N);
    for (long i = 0; i < cfg.N; ++i) g.radius[i] = g.hub[i] ? g.alpha + g.beta : g.alpha;

    g.edges = build_edges(space, g.positions, g.radius, path);
    return g;
}

}  // namespace nugg
