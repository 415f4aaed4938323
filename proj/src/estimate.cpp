#include "estimate.hpp"

#include <cmath>

#include "error.hpp"

namespace nugg {

DensityEstimate estimate_density(const GeometricGraph& g,
                                 std::optional<std::span<const double>> volumes) {
    const long n = g.num_nodes();
    const auto deg = g.degrees();
    DensityEstimate est;
    est.method = volumes ? EstimateMethod::DegreeOverVolume : EstimateMethod::DegreeOnly;
    est.rho_hat.assign(n, 0.0);
    est.defined.assign(n, 1);

    if (volumes) {
        if (static_cast<long>(volumes->size()) != n)
            fail(Errc::invalid, "estimate_density: volume length mismatch");
        for (long i = 0; i < n; ++i) {
            const double vol = (*volumes)[i];
            if (!(vol > 0.0)) fail(Errc::domain, "estimate_density: volumes must be positive");
            if (deg[i] == 0) {
                est.defined[i] = 0;
                continue;
            }
            est.rho_hat[i] = (static_cast<double>(deg[i]) / static_cast<double>(n)) / vol;
        }
        return est;
    }

    // degree-proportional estimate, scaled so mean(1/rho_hat) = 1 over the
    // defined nodes
    double inv_sum = 0.0;
    long defined_count = 0;
    for (long i = 0; i < n; ++i) {
        if (deg[i] == 0) {
            est.defined[i] = 0;
            continue;
        }
        inv_sum += 1.0 / static_cast<double>(deg[i]);
        ++defined_count;
    }
    if (defined_count == 0) return est;
    const double scale = inv_sum / static_cast<double>(defined_count);
    for (long i = 0; i < n; ++i)
        if (est.defined[i]) est.rho_hat[i] = static_cast<double>(deg[i]) * scale;
    return est;
}

PnetFeatures pnet_features(const GeometricGraph& g) {
    const long n = g.num_nodes();
    const auto deg = g.degrees();
    const auto adj = g.adjacency();
    PnetFeatures f;
    f.inv_degree.assign(n, 0.0);
    f.inv_mean_neighbor_degree.assign(n, 0.0);
    f.isolated.assign(n, 0);
    for (long i = 0; i < n; ++i) {
        if (deg[i] == 0) {
            f.isolated[i] = 1;
            continue;
        }
        f.inv_degree[i] = 1.0 / static_cast<double>(deg[i]);
        double s = 0.0;
        for (int j : adj[i]) s += static_cast<double>(deg[j]);
        f.inv_mean_neighbor_degree[i] = static_cast<double>(deg[i]) / s;
    }
    return f;
}

std::vector<double> normalize_inverse_mean(std::span<const double> rho) {
    if (rho.empty()) fail(Errc::invalid, "normalize_inverse_mean: empty input");
    double inv_sum = 0.0;
    for (double r : rho) {
        if (!(r > 0.0)) fail(Errc::domain, "normalize_inverse_mean: entries must be positive");
        inv_sum += 1.0 / r;
    }
    const double scale = inv_sum / static_cast<double>(rho.size());
    std::vector<double> out(rho.begin(), rho.end());
    for (double& r : out) r *= scale;
    return out;
}

}  // namespace nugg
