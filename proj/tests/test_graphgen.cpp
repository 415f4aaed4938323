#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ballprob.hpp"
#include "error.hpp"
#include "graphgen.hpp"
#include "numeric.hpp"
#include "oracles.hpp"

using namespace nugg;

namespace {
const LatentSpace kCircle = LatentSpace::unit_circle();
const LatentSpace kDisk = LatentSpace::unit_disk();
}  // namespace

TEST_CASE("tiny graphs") {
    const AngularDensity uniform = AngularDensity::uniform();
    HubConfig cfg;
    cfg.N = 2;
    cfg.alpha = M_PI;  // at least the diameter: every pair connects
    cfg.seed = 1;
    const auto g = generate(kCircle, uniform, cfg);
    CHECK(g.num_edges() == 1);

    cfg.N = 1;
    cfg.alpha = 0.1;
    const auto g1 = generate(kCircle, uniform, cfg);
    CHECK(g1.num_edges() == 0);
    CHECK_THROWS_AS(generate(kCircle, uniform, HubConfig{0, 0, 0.1, -1, -1, 1}), Error);
    CHECK_THROWS_AS(generate(kCircle, uniform, HubConfig{4, 9, 0.1, -1, -1, 1}), Error);
}

TEST_CASE("no hubs means constant radius") {
    const AngularDensity uniform = AngularDensity::uniform();
    HubConfig cfg;
    cfg.N = 200;
    cfg.alpha = 0.05;
    cfg.beta = 0.7;  // irrelevant without hub seeds
    cfg.seed = 3;
    const auto g = generate(kCircle, uniform, cfg);
    for (double r : g.radius) CHECK(r == 0.05);
    CHECK(g.hub_seeds.empty());
}

TEST_CASE("hub defaults and closure") {
    const AngularDensity uniform = AngularDensity::uniform();
    HubConfig cfg;
    cfg.N = 800;
    cfg.hubs = 4;
    cfg.alpha = 0.1;
    cfg.seed = 12;
    const auto g = generate(kCircle, uniform, cfg);
    CHECK(g.beta == doctest::Approx(0.3));
    CHECK(g.eps == doctest::Approx(0.01));
    CHECK(g.hub_seeds.size() == 4);

    // brute-force closure recheck: hub flag iff within eps of some seed
    for (long i = 0; i < g.num_nodes(); ++i) {
        bool near_seed = false;
        for (int s : g.hub_seeds)
            near_seed = near_seed || distance(kCircle, g.positions[s], g.positions[i]) <= g.eps;
        CHECK(static_cast<bool>(g.hub[i]) == near_seed);
        CHECK(g.radius[i] == (g.hub[i] ? g.alpha + g.beta : g.alpha));
    }
}

TEST_CASE("edge rule recheck by brute force") {
    const AngularDensity tilted(SpectrallyBounded({1.0}, {1}, {0.0}));
    for (const auto& space : {kCircle, kDisk}) {
        HubConfig cfg;
        cfg.N = 400;
        cfg.hubs = 3;
        cfg.alpha = 0.08;
        cfg.seed = 77;
        const auto g = generate(space, tilted, cfg);
        CHECK(g.edges == oracle::brute_edges(space, g.positions, g.radius));
        // handshake identity
        const auto deg = g.degrees();
        long sum = 0;
        for (int d : deg) sum += d;
        CHECK(sum == 2 * g.num_edges());
    }
}

TEST_CASE("indexed and brute-force edge paths agree") {
    const AngularDensity tilted(SpectrallyBounded({0.7, 0.5}, {1, 2}, {0.3, -1.0}));
    for (const auto& space : {kCircle, kDisk}) {
        HubConfig cfg;
        cfg.N = 3000;
        cfg.hubs = 5;
        cfg.alpha = 0.04;
        cfg.seed = 2025;
        const auto brute = generate(space, tilted, cfg, EdgePath::BruteForce);
        const auto indexed = generate(space, tilted, cfg, EdgePath::Indexed);
        CHECK(brute.edges == indexed.edges);
    }
}

TEST_CASE("determinism bit for bit") {
    const AngularDensity tilted(SpectrallyBounded({1.0}, {1}, {0.0}));
    HubConfig cfg;
    cfg.N = 600;
    cfg.hubs = 2;
    cfg.alpha = -1.0;  // automatic connectivity radius
    cfg.seed = 555;
    const auto a = generate(kDisk, tilted, cfg);
    const auto b = generate(kDisk, tilted, cfg);
    CHECK(a.alpha == b.alpha);
    CHECK(a.edges == b.edges);
    CHECK(a.hub == b.hub);
    for (long i = 0; i < a.num_nodes(); ++i) {
        CHECK(a.positions[i].theta == b.positions[i].theta);
        CHECK(a.positions[i].r == b.positions[i].r);
        CHECK(a.rho[i] == b.rho[i]);
    }
}

TEST_CASE("automatic connectivity radius") {
    // collinear points along a disk diameter, gaps 0.1 and 0.2
    std::vector<Point> pts{make_point(kDisk, 0.0, 0.1), make_point(kDisk, 0.0, 0.2),
                           make_point(kDisk, 0.0, 0.4)};
    CHECK(auto_alpha(pts, kDisk) == doctest::Approx(0.2 * 1.0001).epsilon(1e-12));

    std::vector<Point> two{make_point(kDisk, 0.5, 0.3), make_point(kDisk, -1.2, 0.7)};
    const double d = distance(kDisk, two[0], two[1]);
    CHECK(auto_alpha(two, kDisk) == doctest::Approx(d * 1.0001).epsilon(1e-12));
    CHECK_THROWS_AS(auto_alpha(std::vector<Point>{two[0]}, kDisk), Error);

    // random sample: connected at the returned radius, disconnected below the
    // bottleneck
    Rng rng(31);
    std::vector<Point> sample;
    for (int i = 0; i < 100; ++i)
        sample.push_back(make_point(kDisk, rng.uniform(-M_PI, M_PI), std::sqrt(rng.uniform01())));
    const double alpha = auto_alpha(sample, kDisk);
    std::vector<double> radii(sample.size(), alpha);
    CHECK(oracle::graph_connected(100, oracle::brute_edges(kDisk, sample, radii)));
    std::vector<double> small(sample.size(), alpha / 1.01);
    CHECK_FALSE(oracle::graph_connected(100, oracle::brute_edges(kDisk, sample, small)));
}

TEST_CASE("degrees of hand-built graphs") {
    GeometricGraph g;
    g.space = kCircle;
    g.positions.assign(4, Point{0.0, 0.0});
    g.rho.assign(4, 1.0);
    g.hub.assign(4, 0);
    g.radius.assign(4, 1.0);
    CHECK(g.degrees() == std::vector<int>{0, 0, 0, 0});
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) g.edges.emplace_back(i, j);
    CHECK(g.degrees() == std::vector<int>{3, 3, 3, 3});
}

TEST_CASE("mean degree tracks the closed form") {
    const AngularDensity uniform = AngularDensity::uniform();
    HubConfig cfg;
    cfg.N = 5000;
    cfg.alpha = 0.02;
    cfg.seed = 7;
    const auto g = generate(kCircle, uniform, cfg);
    const auto deg = g.degrees();
    std::vector<double> degd(deg.begin(), deg.end());
    const double mean_deg = mean(std::span<const double>(degd));
    const double expect = 5000 * 0.02 / M_PI;
    const double se = oracle::sample_sd(degd) / std::sqrt(5000.0);
    CHECK(std::abs(mean_deg - expect) < 3.0 * se * 3.0);  // degrees correlate; inflate the SE
}

TEST_CASE("degree field follows the expected-degree profile") {
    const AngularDensity tilted(SpectrallyBounded({1.0}, {1}, {0.0}));
    const double alpha = 0.03;
    const long N = 5000;
    const int bins = 8;
    const int trials = 10;
    std::vector<std::vector<double>> trial_means(bins);
    for (int trial = 0; trial < trials; ++trial) {
        HubConfig cfg;
        cfg.N = N;
        cfg.alpha = alpha;
        cfg.seed = 1000 + trial;
        const auto g = generate(kCircle, tilted, cfg);
        const auto deg = g.degrees();
        std::vector<double> sum(bins, 0.0), count(bins, 0.0);
        for (long i = 0; i < N; ++i) {
            const int b = std::min(bins - 1, static_cast<int>((g.positions[i].theta + M_PI) /
                                                              (2 * M_PI) * bins));
            sum[b] += deg[i];
            count[b] += 1.0;
        }
        for (int b = 0; b < bins; ++b) trial_means[b].push_back(sum[b] / count[b]);
    }
    for (int b = 0; b < bins; ++b) {
        // bin-averaged expectation: nodes land anywhere inside the bin, and
        // the profile is far from flat across a bin this wide
        double expect = 0.0;
        const int sub = 64;
        double weight = 0.0;
        for (int k = 0; k < sub; ++k) {
            const double t = -M_PI + (b + (k + 0.5) / sub) * 2 * M_PI / bins;
            const double w = tilted(t);  // nodes arrive density-weighted
            expect += w * expected_degree(kCircle, tilted, make_point(kCircle, t), alpha,
                                          static_cast<double>(N), ProbMethod::ClosedForm);
            weight += w;
        }
        expect /= weight;
        const double got = mean(trial_means[b]);
        // trial scatter captures the neighbor-degree correlations; allow a
        // small extra margin for the residual binning systematics
        const double se = oracle::sample_sd(trial_means[b]) / std::sqrt(double(trials));
        CHECK(std::abs(got - expect) < 4.0 * se + 0.02 * expect + 0.05);
    }
}
