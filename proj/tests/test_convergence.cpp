#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "convergence.hpp"
#include "error.hpp"
#include "graphgen.hpp"
#include "numeric.hpp"
#include "oracles.hpp"

using namespace nugg;

namespace {
const LatentSpace kCircle = LatentSpace::unit_circle();
const LatentSpace kDisk = LatentSpace::unit_disk();
}  // namespace

TEST_CASE("signal parsing and evaluation") {
    const auto c = TestSignal::parse("constant:2.5");
    CHECK(c.eval(kCircle, Point{1.0, 0.0}) == 2.5);
    const auto cos2 = TestSignal::parse("cos:2");
    CHECK(cos2.eval(kCircle, Point{0.7, 0.0}) == doctest::Approx(std::cos(1.4)));
    const auto rp = TestSignal::parse("rpoly:2");
    CHECK(rp.eval(kDisk, Point{0.0, 0.5}) == doctest::Approx(0.25));
    CHECK_THROWS_AS(rp.eval(kCircle, Point{0.0, 0.0}), Error);
    CHECK_THROWS_AS(TestSignal::parse("cos:1.5"), Error);
    CHECK_THROWS_AS(TestSignal::parse("wiggle"), Error);
    CHECK(TestSignal::parse("constant").k == 1.0);
}

TEST_CASE("continuous operator on the circle, constant radius") {
    const auto spec = preset("random_walk");
    const auto u = TestSignal::parse("cos:1");
    const double alpha = 0.2;
    // closed form: (sin a / a - 1) cos x, including seam-adjacent centers
    for (double x : {-3.14, -2.0, 0.0, 0.9, 3.1}) {
        const double got =
            continuous_apply(kCircle, RadiusField::constant(alpha), spec, u, make_point(kCircle, x));
        CHECK(got == doctest::Approx((std::sin(alpha) / alpha - 1.0) * std::cos(x)).epsilon(1e-9));
    }
    // averaging operators annihilate constants
    const auto cst = TestSignal::parse("constant:3");
    for (double x : {-3.0, 0.4}) {
        CHECK(std::abs(continuous_apply(kCircle, RadiusField::constant(alpha), spec, cst,
                                        make_point(kCircle, x))) < 1e-12);
    }
    // kernel-only spec reduces to the first integral
    const auto adj = preset("adjacency");
    const double got = continuous_apply(kCircle, RadiusField::constant(alpha), adj, u,
                                        make_point(kCircle, 0.5));
    CHECK(got == doctest::Approx(std::cos(0.5) * std::sin(alpha) / M_PI).epsilon(1e-9));
}

TEST_CASE("continuous operator on the disk against a transposed-order oracle") {
    // check the kernel term and the diagonal term separately: each is O(1),
    // so a plain membership grid resolves them well
    const auto full = preset("random_walk");
    GsoSpec kernel_only = full;
    kernel_only.m3 = Modulation::zero();
    GsoSpec diag_only = full;
    diag_only.m1 = Modulation::zero();
    const double alpha = 0.25;

    for (const auto& token : {"cos:1", "rpoly:2"}) {
        const auto u = TestSignal::parse(token);
        for (const auto& x : {Point{0.3, 0.45}, Point{-2.0, 0.9}, Point{0.0, 0.05}}) {
            const double term1 =
                continuous_apply(kDisk, RadiusField::constant(alpha), kernel_only, u, x);
            const double term2 =
                -continuous_apply(kDisk, RadiusField::constant(alpha), diag_only, u, x);

            // independent route: theta outside, radius inside, explicit
            // membership tests on a plain grid
            const double mu_x = domain_ball_measure(kDisk, x, alpha);
            auto member_integral = [&](const std::function<double(double, double)>& f) {
                return oracle::grid_integral(
                    [&](double t) {
                        return oracle::grid_integral(
                            [&](double r) {
                                const double d = distance(kDisk, x, Point{t, r});
                                if (d > alpha) return 0.0;
                                return f(t, r) * r / M_PI;
                            },
                            0.0, 1.0, 1200);
                    },
                    -M_PI, M_PI, 1200);
            };
            const double i1 = member_integral([&](double t, double r) {
                return full.m2(domain_ball_measure(kDisk, Point{t, r}, alpha)) *
                       u.eval(kDisk, Point{t, r});
            });
            const double i2 = member_integral([&](double t, double r) {
                return full.m4(domain_ball_measure(kDisk, Point{t, r}, alpha));
            });
            CHECK(term1 == doctest::Approx(full.m1(mu_x) * i1).scale(0.1).epsilon(0.02));
            CHECK(term2 ==
                  doctest::Approx(full.m3(mu_x) * i2 * u.eval(kDisk, x)).scale(0.1).epsilon(0.02));
        }
    }
}

TEST_CASE("continuous operator with a hub field") {
    const double alpha = 0.12, beta = 0.3, eps = 0.06;
    const std::vector<double> seeds{0.4, -1.9};
    const RadiusField field = RadiusField::with_hubs(alpha, beta, ArcSet::from_balls(seeds, eps));
    const auto spec = preset("random_walk");
    const auto u = TestSignal::parse("cos:1");

    auto radius_of = [&](double t) {
        for (double c : seeds)
            if (oracle::circle_arc(t, c) <= eps) return alpha + beta;
        return alpha;
    };
    auto mu_oracle = [&](double y) {
        const int grid = 30000;
        int inside = 0;
        const double ry = radius_of(y);
        for (int k = 0; k < grid; ++k) {
            const double z = -M_PI + 2 * M_PI * (k + 0.5) / grid;
            if (oracle::circle_arc(y, z) <= std::max(ry, radius_of(z))) ++inside;
        }
        return static_cast<double>(inside) / grid;
    };

    GsoSpec kernel_only = spec;
    kernel_only.m3 = Modulation::zero();
    GsoSpec diag_only = spec;
    diag_only.m1 = Modulation::zero();
    for (double x : {0.4, 0.48, -1.0, 2.8}) {
        const double term1 =
            continuous_apply(kCircle, field, kernel_only, u, make_point(kCircle, x));
        const double term2 =
            -continuous_apply(kCircle, field, diag_only, u, make_point(kCircle, x));
        // grid oracle over the neighborhood, nested measures from the grid too
        const int grid = 8000;
        double i1 = 0.0, i2 = 0.0;
        const double rx = radius_of(x);
        for (int k = 0; k < grid; ++k) {
            const double y = -M_PI + 2 * M_PI * (k + 0.5) / grid;
            if (oracle::circle_arc(x, y) > std::max(rx, radius_of(y))) continue;
            const double mu_y = mu_oracle(y);
            i1 += spec.m2(mu_y) * std::cos(y) / grid;
            i2 += spec.m4(mu_y) / grid;
        }
        const double mu_x = mu_oracle(x);
        CHECK(term1 == doctest::Approx(spec.m1(mu_x) * i1).scale(0.1).epsilon(0.02));
        CHECK(term2 == doctest::Approx(spec.m3(mu_x) * i2 * std::cos(x)).scale(0.1).epsilon(0.02));
    }

    // constants are annihilated under hub fields as well
    CHECK(std::abs(continuous_apply(kCircle, field, spec, TestSignal::parse("constant"),
                                    make_point(kCircle, 0.45))) < 1e-10);

    // hub fields are a circle-only feature
    CHECK_THROWS_AS(
        continuous_apply(kDisk, field, spec, TestSignal::parse("constant"), Point{0.0, 0.2}),
        Error);
}

TEST_CASE("sampled operator is unbiased at a fixed node") {
    const auto spec = preset("random_walk");
    const auto u = TestSignal::parse("cos:1");
    // an offset term keeps the density away from zero, so the degree-inverse
    // modulation never meets an isolated node
    const AngularDensity tilted(SpectrallyBounded({1.0, 0.35}, {0, 1}, {0.0, 0.0}));
    const double alpha = 0.15;
    const Point probe = make_point(kCircle, 0.8);
    const double target =
        continuous_apply(kCircle, RadiusField::constant(alpha), spec, u, probe);

    const int trials = 150;
    const long n = 600;
    std::vector<double> values;
    for (int t = 0; t < trials; ++t) {
        HubConfig cfg;
        cfg.N = n;
        cfg.alpha = alpha;
        cfg.seed = 5000 + t;
        auto g = generate(kCircle, tilted, cfg);
        // pin node 0 at the probe and rebuild edges by the same rule
        g.positions[0] = probe;
        g.rho[0] = rho_true(tilted, probe);
        g.edges = build_edges(kCircle, g.positions, g.radius);
        std::vector<double> us(n);
        for (long i = 0; i < n; ++i) us[i] = u.eval(kCircle, g.positions[i]);
        values.push_back(apply_gso(g.adjacency(), g.rho, spec, us)[0]);
    }
    const double m = mean(values);
    const double se = oracle::sample_sd(values) / std::sqrt(static_cast<double>(trials));
    CHECK(std::abs(m - target) < 3.0 * se);
}

TEST_CASE("error decays along the grid") {
    ConvergenceConfig cfg;
    cfg.n_grid = {400, 1000, 2500};
    cfg.trials = 6;
    cfg.spec = preset("random_walk");
    cfg.u = TestSignal::parse("cos:1");
    cfg.alpha = 0.2;
    cfg.seed = 99;
    const AngularDensity uniform = AngularDensity::uniform();
    const auto rep = run_convergence(kCircle, uniform, cfg);
    CHECK(rep.mse[1] < rep.mse[0]);
    CHECK(rep.mse[2] < rep.mse[1]);
    CHECK(rep.sup_err[2] < rep.sup_err[0]);
    CHECK(rep.fitted_slope < 0.0);
    CHECK(rep.samples.size() == 18);

    // byte-stable across reruns
    const auto rep2 = run_convergence(kCircle, uniform, cfg);
    CHECK(rep.mse == rep2.mse);
    CHECK(rep.sup_err == rep2.sup_err);
    CHECK(rep.config_json == rep2.config_json);
    for (std::size_t i = 0; i < rep.samples.size(); ++i) {
        CHECK(rep.samples[i].mse == rep2.samples[i].mse);
        CHECK(rep.samples[i].sup_err == rep2.samples[i].sup_err);
    }
}

TEST_CASE("constant signals vanish to machine precision") {
    ConvergenceConfig cfg;
    cfg.n_grid = {300, 600};
    cfg.trials = 5;
    cfg.spec = preset("random_walk");
    cfg.u = TestSignal::parse("constant");
    cfg.alpha = 0.3;
    cfg.seed = 5;
    const auto rep = run_convergence(kCircle, AngularDensity::uniform(), cfg);
    for (double m : rep.mse) CHECK(m <= 1e-20);
}

TEST_CASE("density correction beats the uncorrected operator") {
    const AngularDensity tilted(SpectrallyBounded({1.0}, {1}, {0.0}));
    ConvergenceConfig cfg;
    cfg.n_grid = {3000};
    cfg.trials = 5;
    cfg.spec = preset("random_walk");
    cfg.u = TestSignal::parse("cos:1");
    cfg.alpha = 0.35;  // the trough of this density leaves smaller radii with isolated nodes
    cfg.seed = 123;
    const auto corrected = run_convergence(kCircle, tilted, cfg);
    cfg.rho_mode = RhoMode::Ignore;
    const auto ignored = run_convergence(kCircle, tilted, cfg);
    CHECK(corrected.mse[0] < ignored.mse[0]);
}

TEST_CASE("configuration validation") {
    ConvergenceConfig cfg;
    cfg.n_grid = {500, 400};
    CHECK_THROWS_AS(run_convergence(kCircle, AngularDensity::uniform(), cfg), Error);
    cfg.n_grid = {};
    CHECK_THROWS_AS(run_convergence(kCircle, AngularDensity::uniform(), cfg), Error);
    cfg.n_grid = {100};
    cfg.trials = 2;
    CHECK_THROWS_AS(run_convergence(kCircle, AngularDensity::uniform(), cfg), Error);
    cfg.trials = 5;
    cfg.alpha = -0.5;
    CHECK_THROWS_AS(run_convergence(kCircle, AngularDensity::uniform(), cfg), Error);
    cfg.alpha = 0.2;
    cfg.hubs = 2;
    CHECK_THROWS_AS(run_convergence(kDisk, AngularDensity::uniform(), cfg), Error);
}

TEST_CASE("worker cap resolution") {
    CHECK(resolve_threads(3) == 3);
    setenv("NUGG_THREADS", "2", 1);
    CHECK(resolve_threads(0) == 2);
    setenv("NUGG_THREADS", "junk", 1);
    CHECK(resolve_threads(0) >= 1);
    unsetenv("NUGG_THREADS");
    CHECK(resolve_threads(0) >= 1);
}

TEST_CASE("hub configurations run end to end") {
    ConvergenceConfig cfg;
    cfg.n_grid = {500};
    cfg.trials = 5;
    cfg.spec = preset("random_walk");
    cfg.u = TestSignal::parse("cos:1");
    cfg.alpha = 0.1;
    cfg.hubs = 2;
    cfg.seed = 17;
    const auto rep = run_convergence(kCircle, AngularDensity::uniform(), cfg);
    CHECK(rep.mse[0] > 0.0);
    CHECK(rep.mse[0] < 0.05);  // still a faithful approximation

    // and the error decays in N under the hub field as well
    cfg.n_grid = {500, 2000};
    const auto rep2 = run_convergence(kCircle, AngularDensity::uniform(), cfg);
    CHECK(rep2.mse[1] < rep2.mse[0]);
}
