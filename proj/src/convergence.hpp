#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "density.hpp"
#include "geometry.hpp"
#include "gso.hpp"
#include "nbhd.hpp"

namespace nugg {

// Bounded closed-form probe signals.
struct TestSignal {
    enum class Kind { Constant, CosHarmonic, RadialPoly };
    Kind kind = Kind::Constant;
    double k = 1.0;

    double eval(const LatentSpace& space, const Point& p) const;
    static TestSignal parse(const std::string& token);  // constant[:v], cos:k, rpoly:k
    std::string token() const;
};

// Continuous counterpart of the sampled operator: two integrals over the
// neighborhood N(x) against the normalized reference measure, modulated by
// the neighborhood volumes.
double continuous_apply(const LatentSpace& space, const RadiusField& field, const GsoSpec& spec,
                        const TestSignal& u, const Point& x, double quad_tol = 1e-9);

enum class RhoMode { True, Ignore };

struct ConvergenceConfig {
    std::vector<long> n_grid;
    int trials = 10;
    GsoSpec spec = preset("random_walk");
    TestSignal u;
    double p = 0.05;       // tail probability of the sup-error scaling check
    double alpha = 0.1;    // constant base radius
    long hubs = 0;         // hub seeds per trial (circle only)
    double beta = -1.0, eps = -1.0;
    RhoMode rho_mode = RhoMode::True;
    std::uint64_t seed = 0;
    int probes = 64;       // error is evaluated on the first `probes` nodes
    int threads = 0;       // 0: NUGG_THREADS env or hardware count
};

struct TrialStat {
    long n = 0;
    int trial = 0;
    double mse = 0.0;
    double sup_err = 0.0;
};

struct ConvergenceReport {
    std::vector<long> n_grid;
    std::vector<double> mse;      // per-N median over trials
    std::vector<double> sup_err;  // per-N median over trials
    std::vector<TrialStat> samples;
    int trials = 0;
    double p = 0.05;
    double fitted_slope = 0.0;  // least squares on (log N, log mse)
    std::string config_json;
};

// For each N and trial: sample a graph, build the density-corrected operator,
// and compare its action on the sampled signal against the continuous
// operator at the probe nodes.
ConvergenceReport run_convergence(const LatentSpace& space, const AngularDensity& density,
                                  const ConvergenceConfig& cfg);

// worker cap: explicit value, else NUGG_THREADS, else hardware concurrency
int resolve_threads(int requested);

}  // namespace nugg
