#include "convergence.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <thread>

#include <json.hpp>

#include "error.hpp"
#include "graphgen.hpp"
#include "numeric.hpp"

namespace nugg {

double TestSignal::eval(const LatentSpace& space, const Point& p) const {
    switch (kind) {
        case Kind::Constant: return k;
        case Kind::CosHarmonic: return std::cos(k * p.theta);
        case Kind::RadialPoly:
            if (!space.has_radial())
                fail(Errc::capability, "radial signal is undefined on the circle");
            return std::pow(p.r, k);
    }
    return 0.0;
}

TestSignal TestSignal::parse(const std::string& token) {
    auto value_of = [&](const std::string& t, double fallback) {
        const auto pos = t.find(':');
        if (pos == std::string::npos) return fallback;
        try {
            return std::stod(t.substr(pos + 1));
        } catch (const std::exception&) {
            fail(Errc::invalid, "signal: bad parameter in '" + t + "'");
        }
    };
    if (token.rfind("constant", 0) == 0) return {Kind::Constant, value_of(token, 1.0)};
    if (token.rfind("cos", 0) == 0) {
        const double k = value_of(token, 1.0);
        // integer harmonics only, so the signal is continuous around the circle
        if (k != std::floor(k) || k < 0.0) fail(Errc::invalid, "signal: cos harmonic must be a non-negative integer");
        return {Kind::CosHarmonic, k};
    }
    if (token.rfind("rpoly", 0) == 0) {
        const double k = value_of(token, 1.0);
        if (k < 0.0) fail(Errc::invalid, "signal: radial power must be >= 0");
        return {Kind::RadialPoly, k};
    }
    fail(Errc::invalid, "signal: unknown token '" + token + "'");
}

std::string TestSignal::token() const {
    char buf[48];
    const char* name = kind == Kind::Constant ? "constant" : kind == Kind::CosHarmonic ? "cos" : "rpoly";
    std::snprintf(buf, sizeof buf, "%s:%.17g", name, k);
    return buf;
}

namespace {

constexpr double kTwoPi = 2.0 * M_PI;

// circle path: arcs of N(x), integrand split at hub-boundary kinks
double apply_circle(const LatentSpace& space, const RadiusField& field, const GsoSpec& spec,
                    const TestSignal& u, const Point& x, double tol) {
    const double mu_x = neighborhood_measure(space, field, x);
    const double r_x = field.radius_at(x.theta);

    ArcSet nbhd = ArcSet::from_balls({x.theta}, r_x);
    std::vector<double> breaks;
    if (!field.is_constant()) {
        nbhd = nbhd.union_with(field.hubs.intersect_ball(x.theta, field.alpha + field.beta));
        for (double e : field.hubs.endpoints()) {
            breaks.push_back(e);
            for (double shift : {field.alpha, -field.alpha, field.alpha + field.beta,
                                 -(field.alpha + field.beta)})
                breaks.push_back(wrap_angle(e + shift));
        }
    }

    auto mu_at = [&](double theta) {
        return field.is_constant() ? mu_x
                                   : neighborhood_measure(space, field, Point{wrap_angle(theta), 0.0});
    };
    double integral_u = 0.0;   // int m2(mu(y)) u(y) dmu(y)
    double integral_1 = 0.0;   // int m4(mu(y)) dmu(y)
    const double tol_each = tol / std::max<std::size_t>(1, nbhd.pieces().size());
    for (const auto& [a, b] : nbhd.pieces()) {
        integral_u += integrate_split(
            [&](double t) {
                const Point y{wrap_angle(t), 0.0};
                return spec.m2(mu_at(t)) * u.eval(space, y);
            },
            a, b, breaks, tol_each) / kTwoPi;
        integral_1 += integrate_split([&](double t) { return spec.m4(mu_at(t)); }, a, b, breaks,
                                      tol_each) / kTwoPi;
    }
    return spec.m1(mu_x) * integral_u - spec.m3(mu_x) * integral_1 * u.eval(space, x);
}

// 2-d spaces, constant radius: radial integral with the angular sweep solved
// in closed form (the in-domain ball volume depends on the radius only)
double apply_radial(const LatentSpace& space, double alpha, const GsoSpec& spec,
                    const TestSignal& u, const Point& x, double tol) {
    const double mu_x = domain_ball_measure(space, x, alpha);
    const double rmax = space.radial_max();
    const double total = space.total_measure();
    const double lo = std::max(0.0, x.r - alpha);
    const double hi = std::min(rmax, x.r + alpha);

    auto cos_halfwidth = [&](double r) -> double {
        switch (space.kind) {
            case SpaceKind::UnitDisk: {
                const double s = 2.0 * r * x.r;
                if (s == 0.0) return (x.r * x.r + r * r <= alpha * alpha) ? -1.0 : 1.0;
                return (r * r + x.r * x.r - alpha * alpha) / s;
            }
            case SpaceKind::Sphere2: {
                const double s = std::sin(r) * std::sin(x.r);
                if (s == 0.0)
                    return (std::cos(std::min(alpha, M_PI)) - std::cos(r) * std::cos(x.r) <= 0.0) ? -1.0 : 1.0;
                return (std::cos(alpha) - std::cos(r) * std::cos(x.r)) / s;
            }
            case SpaceKind::HyperbolicDisk: {
                const double s = std::sinh(r) * std::sinh(x.r);
                if (s == 0.0) return (std::cosh(r) * std::cosh(x.r) - std::cosh(alpha) <= 0.0) ? -1.0 : 1.0;
                return (std::cosh(r) * std::cosh(x.r) - std::cosh(alpha)) / s;
            }
            default: return 1.0;
        }
    };
    // angular integral of the signal over [theta_x - h, theta_x + h]
    auto u_sweep = [&](double r, double h) -> double {
        switch (u.kind) {
            case TestSignal::Kind::Constant: return u.k * 2.0 * h;
            case TestSignal::Kind::CosHarmonic: {
                if (u.k == 0.0) return 2.0 * h;
                return 2.0 / u.k * std::cos(u.k * x.theta) * std::sin(u.k * h);
            }
            case TestSignal::Kind::RadialPoly: return std::pow(r, u.k) * 2.0 * h;
        }
        return 0.0;
    };

    auto shell = [&](double r, bool with_u) {
        const double z = std::clamp(cos_halfwidth(r), -1.0, 1.0);
        const double h = std::acos(z);
        if (h <= 0.0) return 0.0;
        const double mu_y = domain_ball_measure(space, Point{x.theta, r}, alpha);
        const double jac = space.radial_jacobian(r) / total;
        return jac * (with_u ? spec.m2(mu_y) * u_sweep(r, h) : spec.m4(mu_y) * 2.0 * h);
    };
    std::vector<double> kinks{std::abs(alpha - x.r)};
    if (space.kind == SpaceKind::Sphere2) kinks.push_back(2.0 * M_PI - alpha - x.r);
    const double integral_u =
        integrate_ball_slice([&](double r) { return shell(r, true); }, x.r, alpha, lo, hi, kinks, tol);
    const double integral_1 =
        integrate_ball_slice([&](double r) { return shell(r, false); }, x.r, alpha, lo, hi, kinks, tol);
    return spec.m1(mu_x) * integral_u - spec.m3(mu_x) * integral_1 * u.eval(space, x);
}

}  // namespace

double continuous_apply(const LatentSpace& space, const RadiusField& field, const GsoSpec& spec,
                        const TestSignal& u, const Point& x, double quad_tol) {
    check_point(space, x);
    if (space.kind == SpaceKind::UnitCircle) return apply_circle(space, field, spec, u, x, quad_tol);
    if (!field.is_constant())
        fail(Errc::capability, "hub radius fields are supported on the circle only");
    return apply_radial(space, field.alpha, spec, u, x, quad_tol);
}

int resolve_threads(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("NUGG_THREADS")) {
        const int v = std::atoi(env);
        if (v > 0) return v;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

ConvergenceReport run_convergence(const LatentSpace& space, const AngularDensity& density,
                                  const ConvergenceConfig& cfg) {
    if (cfg.n_grid.empty()) fail(Errc::invalid, "convergence: empty N grid");
    for (std::size_t i = 1; i < cfg.n_grid.size(); ++i)
        if (cfg.n_grid[i] <= cfg.n_grid[i - 1])
            fail(Errc::invalid, "convergence: N grid must be strictly increasing");
    if (cfg.trials < 5) fail(Errc::invalid, "convergence: trials must be >= 5");
    if (!(cfg.alpha > 0.0)) fail(Errc::invalid, "convergence: alpha must be positive");
    if (cfg.hubs > 0 && space.kind != SpaceKind::UnitCircle)
        fail(Errc::capability, "convergence: hub configurations run on the circle only");

    const std::size_t n_count = cfg.n_grid.size();
    std::vector<TrialStat> samples(n_count * cfg.trials);

    auto run_one = [&](std::size_t ni, int trial) {
        const long n = cfg.n_grid[ni];
        HubConfig hc;
        hc.N = n;
        hc.hubs = cfg.hubs;
        hc.alpha = cfg.alpha;
        hc.beta = cfg.beta;
        hc.eps = cfg.eps;
        hc.seed = Rng::derive(cfg.seed, static_cast<std::uint64_t>(n),
                              static_cast<std::uint64_t>(trial));
        const GeometricGraph g = generate(space, density, hc);
        const RadiusField field = RadiusField::of_graph(g);

        std::vector<double> rho(n, 1.0);
        if (cfg.rho_mode == RhoMode::True) rho = g.rho;

        std::vector<double> u_sampled(n);
        for (long i = 0; i < n; ++i) u_sampled[i] = cfg.u.eval(space, g.positions[i]);
        const auto lu = apply_gso(g.adjacency(), rho, cfg.spec, u_sampled);

        const int probes = static_cast<int>(std::min<long>(cfg.probes, n));
        double se_sum = 0.0, sup = 0.0;
        for (int i = 0; i < probes; ++i) {
            const double target = continuous_apply(space, field, cfg.spec, cfg.u, g.positions[i]);
            const double err = lu[i] - target;
            se_sum += err * err;
            sup = std::max(sup, std::abs(err));
        }
        samples[ni * cfg.trials + trial] =
            TrialStat{n, trial, se_sum / probes, sup};
    };

    // trials are independent; a shared counter hands out (N, trial) tasks
    const int threads = std::min<int>(resolve_threads(cfg.threads),
                                      static_cast<int>(n_count) * cfg.trials);
    std::atomic<std::size_t> next{0};
    const std::size_t task_count = n_count * static_cast<std::size_t>(cfg.trials);
    auto worker = [&] {
        for (;;) {
            const std::size_t t = next.fetch_add(1);
            if (t >= task_count) return;
            run_one(t / cfg.trials, static_cast<int>(t % cfg.trials));
        }
    };
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    ConvergenceReport rep;
    rep.n_grid = cfg.n_grid;
    rep.trials = cfg.trials;
    rep.p = cfg.p;
    rep.samples = samples;
    std::vector<double> log_n, log_mse;
    for (std::size_t ni = 0; ni < n_count; ++ni) {
        std::vector<double> mses, sups;
        for (int t = 0; t < cfg.trials; ++t) {
            mses.push_back(samples[ni * cfg.trials + t].mse);
            sups.push_back(samples[ni * cfg.trials + t].sup_err);
        }
        rep.mse.push_back(median(mses));
        rep.sup_err.push_back(median(sups));
        log_n.push_back(std::log(static_cast<double>(cfg.n_grid[ni])));
        log_mse.push_back(std::log(std::max(rep.mse.back(), 1e-300)));
    }
    rep.fitted_slope = n_count >= 2 ? fit_slope(log_n, log_mse) : 0.0;

    nlohmann::json echo;
    echo["space"] = to_string(space.kind);
    if (space.kind == SpaceKind::HyperbolicDisk) echo["R"] = space.R;
    echo["density"] = nlohmann::json::parse(density.to_json());
    echo["n_grid"] = cfg.n_grid;
    echo["trials"] = cfg.trials;
    echo["spec"] = nlohmann::json::parse(cfg.spec.to_json());
    echo["u"] = cfg.u.token();
    echo["p"] = cfg.p;
    echo["alpha"] = cfg.alpha;
    echo["hubs"] = cfg.hubs;
    echo["beta"] = cfg.beta;
    echo["eps"] = cfg.eps;
    echo["rho"] = cfg.rho_mode == RhoMode::True ? "true" : "ignore";
    echo["seed"] = cfg.seed;
    echo["probes"] = cfg.probes;
    rep.config_json = echo.dump();
    return rep;
}

}  // namespace nugg
