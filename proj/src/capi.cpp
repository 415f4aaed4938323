#include "nugg/nugg.h"

#include <cmath>
#include <cstring>
#include <string>

#include "ballprob.hpp"
#include "convergence.hpp"
#include "density.hpp"
#include "error.hpp"
#include "estimate.hpp"
#include "geometry.hpp"
#include "graphgen.hpp"
#include "gso.hpp"
#include "io.hpp"
#include "nbhd.hpp"

struct nugg_space {
    nugg::LatentSpace s;
};
struct nugg_density {
    nugg::AngularDensity d;
};
struct nugg_graph {
    nugg::GraphBundle b;
};
struct nugg_gso_spec {
    nugg::GsoSpec s;
};
struct nugg_matrix {
    nugg::DenseMatrix m;
};
struct nugg_report {
    nugg::ConvergenceReport r;
};

namespace {

thread_local std::string g_last_error;

nugg_status map_code(nugg::Errc c) {
    switch (c) {
        case nugg::Errc::invalid: return NUGG_ERR_INVALID;
        case nugg::Errc::domain: return NUGG_ERR_DOMAIN;
        case nugg::Errc::capability: return NUGG_ERR_CAPABILITY;
        case nugg::Errc::singular: return NUGG_ERR_SINGULAR;
        case nugg::Errc::numeric: return NUGG_ERR_NUMERIC;
        case nugg::Errc::io: return NUGG_ERR_IO;
    }
    return NUGG_ERR_INVALID;
}

template <class F>
nugg_status wrap(F&& f) {
    try {
        f();
        return NUGG_OK;
    } catch (const nugg::Error& e) {
        g_last_error = e.what();
        return map_code(e.code());
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return NUGG_ERR_INVALID;
    }
}

nugg_status require(bool cond, const char* what) {
    if (cond) return NUGG_OK;
    g_last_error = what;
    return NUGG_ERR_INVALID;
}

char* dup_string(const std::string& s) {
    char* out = new char[s.size() + 1];
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

std::vector<double> resolve_rho(const nugg::GraphBundle& b, const char* mode) {
    const std::string m = mode ? mode : "true";
    const long n = b.graph.num_nodes();
    if (m == "true") return b.graph.rho;
    if (m == "ignore") return std::vector<double>(n, 1.0);
    if (m == "estimate") {
        const auto est = nugg::estimate_density(b.graph);
        for (long i = 0; i < n; ++i)
            if (!est.defined[i])
                nugg::fail(nugg::Errc::singular,
                           "rho estimate undefined at isolated node " + std::to_string(i));
        return est.rho_hat;
    }
    nugg::fail(nugg::Errc::invalid, "rho mode must be one of true|ignore|estimate");
}

constexpr long kDenseLimit = 5000;

nugg::DenseMatrix dense_adjacency(const nugg::GeometricGraph& g) {
    const long n = g.num_nodes();
    if (n > kDenseLimit)
        nugg::fail(nugg::Errc::invalid,
                   "dense operator capped at 5000 nodes; use nugg_gso_apply for larger graphs");
    nugg::DenseMatrix a(static_cast<int>(n));
    for (const auto& [i, j] : g.edges) {
        a.at(i, j) = 1.0;
        a.at(j, i) = 1.0;
    }
    return a;
}

}  // namespace

extern "C" {

const char* nugg_version(void) { return "0.1.0"; }

const char* nugg_last_error(void) { return g_last_error.c_str(); }

void nugg_string_free(char* s) { delete[] s; }

/* ---- spaces ---- */

nugg_status nugg_space_create(const char* kind, double R, nugg_space** out) {
    if (auto rc = require(kind && out, "null argument")) return rc;
    return wrap([&] {
        const nugg::SpaceKind k = nugg::space_kind_from_string(kind);
        nugg::LatentSpace s{k, 0.0};
        if (k == nugg::SpaceKind::HyperbolicDisk)
            s = nugg::LatentSpace::hyperbolic_disk(R);
        else if (k == nugg::SpaceKind::UnitDisk)
            s = nugg::LatentSpace::unit_disk();
        *out = new nugg_space{s};
    });
}

void nugg_space_free(nugg_space* s) { delete s; }

nugg_status nugg_space_distance(const nugg_space* s, double theta1, double r1, double theta2,
                                double r2, double* out) {
    if (auto rc = require(s && out, "null argument")) return rc;
    return wrap([&] {
        *out = nugg::distance(s->s, nugg::make_point(s->s, theta1, r1),
                              nugg::make_point(s->s, theta2, r2));
    });
}

nugg_status nugg_space_ball_measure(const nugg_space* s, double alpha, int normalized,
                                    double* out) {
    if (auto rc = require(s && out, "null argument")) return rc;
    return wrap([&] { *out = nugg::ball_measure(s->s, alpha, normalized != 0); });
}

/* ---- densities ---- */

nugg_status nugg_density_create(const char* spec, nugg_density** out) {
    if (auto rc = require(spec && out, "null argument")) return rc;
    return wrap([&] {
        const std::string text = spec;
        if (text == "uniform")
            *out = new nugg_density{nugg::AngularDensity::uniform()};
        else
            *out = new nugg_density{nugg::AngularDensity::from_json(text)};
    });
}

nugg_status nugg_density_to_json(const nugg_density* d, char** out) {
    if (auto rc = require(d && out, "null argument")) return rc;
    return wrap([&] { *out = dup_string(d->d.to_json()); });
}

void nugg_density_free(nugg_density* d) { delete d; }

nugg_status nugg_density_eval(const nugg_density* d, double theta, double* out) {
    if (auto rc = require(d && out, "null argument")) return rc;
    return wrap([&] { *out = d->d(theta); });
}

nugg_status nugg_density_mvm_to_series(const nugg_density* d, nugg_density** out) {
    if (auto rc = require(d && out, "null argument")) return rc;
    return wrap([&] {
        const auto* m = d->d.mvm();
        if (!m) nugg::fail(nugg::Errc::invalid, "density is not a von Mises mixture");
        *out = new nugg_density{nugg::AngularDensity(nugg::mvm_to_sbrv(*m))};
    });
}

nugg_status nugg_density_sample_angles(const nugg_density* d, uint64_t seed, long count,
                                       double* out) {
    if (auto rc = require(d && (out || count == 0), "null argument")) return rc;
    return wrap([&] {
        nugg::Rng rng(seed);
        const auto angles = nugg::sample_angle(d->d, rng, count);
        std::copy(angles.begin(), angles.end(), out);
    });
}

nugg_status nugg_ball_probability(const nugg_space* s, const nugg_density* d, double theta,
                                  double r, double alpha, int method, double* out) {
    if (auto rc = require(s && d && out, "null argument")) return rc;
    return wrap([&] {
        *out = nugg::ball_probability(
            s->s, d->d, nugg::make_point(s->s, theta, r), alpha,
            method == 0 ? nugg::ProbMethod::ClosedForm : nugg::ProbMethod::Quadrature);
    });
}

nugg_status nugg_expected_degree(const nugg_space* s, const nugg_density* d, double theta,
                                 double r, double alpha, double N, int method, double* out) {
    if (auto rc = require(s && d && out, "null argument")) return rc;
    return wrap([&] {
        *out = nugg::expected_degree(
            s->s, d->d, nugg::make_point(s->s, theta, r), alpha, N,
            method == 0 ? nugg::ProbMethod::ClosedForm : nugg::ProbMethod::Quadrature);
    });
}

nugg_status nugg_expected_average_degree(const nugg_space* s, const nugg_density* d, double alpha,
                                         double N, double* out) {
    if (auto rc = require(s && d && out, "null argument")) return rc;
    return wrap([&] { *out = nugg::expected_average_degree(s->s, d->d, alpha, N); });
}

/* ---- graphs ---- */

nugg_status nugg_graph_generate(const nugg_space* s, const nugg_density* d,
                                const nugg_hub_config* cfg, nugg_graph** out) {
    if (auto rc = require(s && d && cfg && out, "null argument")) return rc;
    return wrap([&] {
        nugg::HubConfig hc{cfg->n, cfg->hubs, cfg->alpha, cfg->beta, cfg->eps, cfg->seed};
        *out = new nugg_graph{nugg::GraphBundle{nugg::generate(s->s, d->d, hc), d->d}};
    });
}

void nugg_graph_free(nugg_graph* g) { delete g; }

long nugg_graph_num_nodes(const nugg_graph* g) { return g ? g->b.graph.num_nodes() : 0; }
long nugg_graph_num_edges(const nugg_graph* g) { return g ? g->b.graph.num_edges() : 0; }

long nugg_graph_hub_count(const nugg_graph* g) {
    if (!g) return 0;
    long c = 0;
    for (auto h : g->b.graph.hub) c += h;
    return c;
}

double nugg_graph_alpha(const nugg_graph* g) { return g ? g->b.graph.alpha : 0.0; }
double nugg_graph_beta(const nugg_graph* g) { return g ? g->b.graph.beta : 0.0; }
double nugg_graph_eps(const nugg_graph* g) { return g ? g->b.graph.eps : 0.0; }

nugg_status nugg_graph_nodes(const nugg_graph* g, double* theta, double* r, double* rho, int* hub,
                             double* radius, int* degree) {
    if (auto rc = require(g != nullptr, "null graph")) return rc;
    return wrap([&] {
        const auto& gr = g->b.graph;
        const auto deg = gr.degrees();
        for (long i = 0; i < gr.num_nodes(); ++i) {
            if (theta) theta[i] = gr.positions[i].theta;
            if (r) r[i] = gr.positions[i].r;
            if (rho) rho[i] = gr.rho[i];
            if (hub) hub[i] = gr.hub[i];
            if (radius) radius[i] = gr.radius[i];
            if (degree) degree[i] = deg[i];
        }
    });
}

nugg_status nugg_graph_edges(const nugg_graph* g, int* u, int* v) {
    if (auto rc = require(g && u && v, "null argument")) return rc;
    return wrap([&] {
        long k = 0;
        for (const auto& [a, b] : g->b.graph.edges) {
            u[k] = a;
            v[k] = b;
            ++k;
        }
    });
}

nugg_status nugg_graph_neighborhood_volumes(const nugg_graph* g, double* out) {
    if (auto rc = require(g && out, "null argument")) return rc;
    return wrap([&] {
        const auto vol = nugg::neighborhood_volumes(g->b.graph);
        std::copy(vol.begin(), vol.end(), out);
    });
}

nugg_status nugg_graph_space(const nugg_graph* g, nugg_space** out) {
    if (auto rc = require(g && out, "null argument")) return rc;
    return wrap([&] { *out = new nugg_space{g->b.graph.space}; });
}

nugg_status nugg_graph_density(const nugg_graph* g, nugg_density** out) {
    if (auto rc = require(g && out, "null argument")) return rc;
    return wrap([&] { *out = new nugg_density{g->b.density}; });
}

nugg_status nugg_graph_write_json(const nugg_graph* g, const char* path) {
    if (auto rc = require(g && path, "null argument")) return rc;
    return wrap([&] { nugg::write_file_atomic(path, nugg::graph_to_json(g->b)); });
}

nugg_status nugg_graph_write_csv(const nugg_graph* g, const char* nodes_path,
                                 const char* edges_path) {
    if (auto rc = require(g && nodes_path && edges_path, "null argument")) return rc;
    return wrap([&] {
        nugg::write_file_atomic(nodes_path, nugg::graph_nodes_csv(g->b.graph));
        nugg::write_file_atomic(edges_path, nugg::graph_edges_csv(g->b.graph));
    });
}

nugg_status nugg_graph_read_json(const char* path, nugg_graph** out) {
    if (auto rc = require(path && out, "null argument")) return rc;
    return wrap([&] { *out = new nugg_graph{nugg::graph_from_json(nugg::read_file(path))}; });
}

/* ---- shift operators ---- */

nugg_status nugg_gso_spec_preset(const char* name, nugg_gso_spec** out) {
    if (auto rc = require(name && out, "null argument")) return rc;
    return wrap([&] { *out = new nugg_gso_spec{nugg::preset(name)}; });
}

nugg_status nugg_gso_spec_parse(const char* json, nugg_gso_spec** out) {
    if (auto rc = require(json && out, "null argument")) return rc;
    return wrap([&] { *out = new nugg_gso_spec{nugg::GsoSpec::from_json(json)}; });
}

nugg_status nugg_gso_spec_to_json(const nugg_gso_spec* s, char** out) {
    if (auto rc = require(s && out, "null argument")) return rc;
    return wrap([&] { *out = dup_string(s->s.to_json()); });
}

nugg_status nugg_gso_spec_custom(double (*m)(int which, double x, void* user), void* user,
                                 nugg_gso_spec** out) {
    if (auto rc = require(m && out, "null argument")) return rc;
    return wrap([&] {
        auto lift = [m, user](int which) {
            return nugg::Modulation::custom([m, user, which](double x) { return m(which, x, user); });
        };
        *out = new nugg_gso_spec{nugg::GsoSpec{lift(1), lift(2), lift(3), lift(4), ""}};
    });
}

void nugg_gso_spec_free(nugg_gso_spec* s) { delete s; }

nugg_status nugg_gso_build_from_graph(const nugg_graph* g, const char* rho_mode,
                                      const nugg_gso_spec* spec, nugg_matrix** out) {
    if (auto rc = require(g && spec && out, "null argument")) return rc;
    return wrap([&] {
        const auto rho = resolve_rho(g->b, rho_mode);
        const auto adj = dense_adjacency(g->b.graph);
        *out = new nugg_matrix{nugg::build_gso(adj, rho, spec->s)};
    });
}

nugg_status nugg_gso_build_dense(int n, const double* adjacency, const double* rho,
                                 const nugg_gso_spec* spec, nugg_matrix** out) {
    if (auto rc = require(n >= 0 && adjacency && spec && out, "null argument")) return rc;
    return wrap([&] {
        nugg::DenseMatrix a(n);
        std::copy(adjacency, adjacency + static_cast<std::size_t>(n) * n, a.a.begin());
        std::vector<double> r(n, 1.0);
        if (rho) r.assign(rho, rho + n);
        *out = new nugg_matrix{nugg::build_gso(a, r, spec->s)};
    });
}

nugg_status nugg_gso_apply(const nugg_graph* g, const char* rho_mode, const nugg_gso_spec* spec,
                           const double* u, double* out) {
    if (auto rc = require(g && spec && u && out, "null argument")) return rc;
    return wrap([&] {
        const auto rho = resolve_rho(g->b, rho_mode);
        const long n = g->b.graph.num_nodes();
        const auto result = nugg::apply_gso(g->b.graph.adjacency(), rho, spec->s,
                                            std::span<const double>(u, n));
        std::copy(result.begin(), result.end(), out);
    });
}

nugg_status nugg_matrix_create(int n, const double* data, nugg_matrix** out) {
    if (auto rc = require(n >= 0 && data && out, "null argument")) return rc;
    return wrap([&] {
        nugg::DenseMatrix m(n);
        std::copy(data, data + static_cast<std::size_t>(n) * n, m.a.begin());
        *out = new nugg_matrix{std::move(m)};
    });
}

int nugg_matrix_dim(const nugg_matrix* m) { return m ? m->m.n : 0; }

double nugg_matrix_get(const nugg_matrix* m, int i, int j) {
    if (!m || i < 0 || j < 0 || i >= m->m.n || j >= m->m.n) return 0.0;
    return m->m.at(i, j);
}

nugg_status nugg_matrix_copy(const nugg_matrix* m, double* out) {
    if (auto rc = require(m && out, "null argument")) return rc;
    std::copy(m->m.a.begin(), m->m.a.end(), out);
    return NUGG_OK;
}

nugg_status nugg_matrix_write_csv(const nugg_matrix* m, const char* path) {
    if (auto rc = require(m && path, "null argument")) return rc;
    return wrap([&] { nugg::write_file_atomic(path, nugg::matrix_to_csv(m->m)); });
}

nugg_status nugg_matrix_write_coo(const nugg_matrix* m, const char* path) {
    if (auto rc = require(m && path, "null argument")) return rc;
    return wrap([&] { nugg::write_file_atomic(path, nugg::matrix_to_coo(m->m)); });
}

void nugg_matrix_free(nugg_matrix* m) { delete m; }

nugg_status nugg_matrix_canonical_scale(const nugg_matrix* m, const char* preset, int n_nodes,
                                        nugg_matrix** out) {
    if (auto rc = require(m && preset && out, "null argument")) return rc;
    return wrap([&] { *out = new nugg_matrix{nugg::canonical_scale(m->m, preset, n_nodes)}; });
}

int nugg_matrix_is_symmetric(const nugg_matrix* m) {
    if (!m) return 0;
    for (int i = 0; i < m->m.n; ++i)
        for (int j = i + 1; j < m->m.n; ++j) {
            // same gate as the eigensolver: exact symmetry up to rounding of
            // the reordered scale products
            const double d = std::abs(m->m.at(i, j) - m->m.at(j, i));
            if (d > 1e-12 * std::max(1.0, std::abs(m->m.at(i, j)))) return 0;
        }
    return 1;
}

nugg_status nugg_matrix_spectral_radius(const nugg_matrix* m, double* out) {
    if (auto rc = require(m && out, "null argument")) return rc;
    return wrap([&] { *out = nugg::spectral_radius(m->m); });
}

nugg_status nugg_matrix_eigenvalues(const nugg_matrix* m, double* out) {
    if (auto rc = require(m && out, "null argument")) return rc;
    return wrap([&] {
        const auto ev = nugg::symmetric_eigenvalues(m->m);
        std::copy(ev.begin(), ev.end(), out);
    });
}

nugg_status nugg_matrix_extreme_eigenvalues(const nugg_matrix* m, double* lambda_min,
                                            double* lambda_max) {
    if (auto rc = require(m && lambda_min && lambda_max, "null argument")) return rc;
    return wrap([&] {
        const auto [lo, hi] = nugg::extreme_eigenvalues(m->m);
        *lambda_min = lo;
        *lambda_max = hi;
    });
}

nugg_status nugg_bipartite_spectrum(int n, int m, double* values, int* multiplicities,
                                    int* count) {
    if (auto rc = require(values && multiplicities && count, "null argument")) return rc;
    return wrap([&] {
        const auto spec = nugg::bipartite_spectrum(n, m);
        if (*count < static_cast<int>(spec.size()))
            nugg::fail(nugg::Errc::invalid, "bipartite_spectrum: buffer too small");
        for (std::size_t i = 0; i < spec.size(); ++i) {
            values[i] = spec[i].first;
            multiplicities[i] = spec[i].second;
        }
        *count = static_cast<int>(spec.size());
    });
}

nugg_status nugg_diag_commute_check(int n, const double* a, const double* v, int* identity1,
                                    int* iff_condition, int* identity2) {
    if (auto rc = require(a && v && identity1 && iff_condition && identity2, "null argument"))
        return rc;
    return wrap([&] {
        nugg::DenseMatrix m(n);
        std::copy(a, a + static_cast<std::size_t>(n) * n, m.a.begin());
        const auto rep = nugg::diag_commute_check(m, std::span<const double>(v, n));
        *identity1 = rep.identity1_holds;
        *iff_condition = rep.iff_condition_holds;
        *identity2 = rep.identity2_holds;
    });
}

/* ---- estimation ---- */

nugg_status nugg_estimate_density(const nugg_graph* g, const double* volumes, double* rho_hat,
                                  int* defined) {
    if (auto rc = require(g && rho_hat, "null argument")) return rc;
    return wrap([&] {
        const long n = g->b.graph.num_nodes();
        std::optional<std::span<const double>> vol;
        if (volumes) vol = std::span<const double>(volumes, n);
        const auto est = nugg::estimate_density(g->b.graph, vol);
        for (long i = 0; i < n; ++i) {
            rho_hat[i] = est.rho_hat[i];
            if (defined) defined[i] = est.defined[i];
        }
    });
}

nugg_status nugg_pnet_features(const nugg_graph* g, double* inv_degree,
                               double* inv_mean_neighbor_degree, int* isolated) {
    if (auto rc = require(g && inv_degree && inv_mean_neighbor_degree, "null argument")) return rc;
    return wrap([&] {
        const auto f = nugg::pnet_features(g->b.graph);
        for (long i = 0; i < g->b.graph.num_nodes(); ++i) {
            inv_degree[i] = f.inv_degree[i];
            inv_mean_neighbor_degree[i] = f.inv_mean_neighbor_degree[i];
            if (isolated) isolated[i] = f.isolated[i];
        }
    });
}

nugg_status nugg_normalize_inverse_mean(const double* rho, long n, double* out) {
    if (auto rc = require(rho && out && n > 0, "null or empty input")) return rc;
    return wrap([&] {
        const auto result = nugg::normalize_inverse_mean(std::span<const double>(rho, n));
        std::copy(result.begin(), result.end(), out);
    });
}

/* ---- convergence ---- */

nugg_status nugg_convergence_run(const nugg_space* s, const nugg_density* d,
                                 const nugg_gso_spec* spec, const nugg_convergence_config* cfg,
                                 nugg_report** out) {
    if (auto rc = require(s && d && spec && cfg && cfg->n_grid && out, "null argument")) return rc;
    return wrap([&] {
        nugg::ConvergenceConfig cc;
        cc.n_grid.assign(cfg->n_grid, cfg->n_grid + cfg->n_count);
        cc.trials = cfg->trials;
        cc.spec = spec->s;
        cc.u = nugg::TestSignal::parse(cfg->u ? cfg->u : "cos:1");
        cc.p = cfg->p > 0.0 ? cfg->p : 0.05;
        cc.alpha = cfg->alpha;
        cc.hubs = cfg->hubs;
        cc.beta = cfg->beta;
        cc.eps = cfg->eps;
        const std::string mode = cfg->rho_mode ? cfg->rho_mode : "true";
        if (mode == "true")
            cc.rho_mode = nugg::RhoMode::True;
        else if (mode == "ignore")
            cc.rho_mode = nugg::RhoMode::Ignore;
        else
            nugg::fail(nugg::Errc::invalid, "convergence rho mode must be true|ignore");
        cc.seed = cfg->seed;
        if (cfg->probes > 0) cc.probes = cfg->probes;
        cc.threads = cfg->threads;
        *out = new nugg_report{nugg::run_convergence(s->s, d->d, cc)};
    });
}

void nugg_report_free(nugg_report* r) { delete r; }

int nugg_report_grid_size(const nugg_report* r) {
    return r ? static_cast<int>(r->r.n_grid.size()) : 0;
}

double nugg_report_slope(const nugg_report* r) { return r ? r->r.fitted_slope : 0.0; }

nugg_status nugg_report_per_n(const nugg_report* r, long* n, double* mse, double* sup_err) {
    if (auto rc = require(r != nullptr, "null report")) return rc;
    for (std::size_t i = 0; i < r->r.n_grid.size(); ++i) {
        if (n) n[i] = r->r.n_grid[i];
        if (mse) mse[i] = r->r.mse[i];
        if (sup_err) sup_err[i] = r->r.sup_err[i];
    }
    return NUGG_OK;
}

nugg_status nugg_report_write_csv(const nugg_report* r, const char* path) {
    if (auto rc = require(r && path, "null argument")) return rc;
    return wrap([&] { nugg::write_file_atomic(path, nugg::report_to_csv(r->r)); });
}

nugg_status nugg_report_write_json(const nugg_report* r, const char* path) {
    if (auto rc = require(r && path, "null argument")) return rc;
    return wrap([&] { nugg::write_file_atomic(path, nugg::report_to_json(r->r)); });
}

nugg_status nugg_continuous_apply(const nugg_space* s, const nugg_gso_spec* spec, const char* u,
                                  double alpha, double theta, double r, double* out) {
    if (auto rc = require(s && spec && u && out, "null argument")) return rc;
    return wrap([&] {
        *out = nugg::continuous_apply(s->s, nugg::RadiusField::constant(alpha), spec->s,
                                      nugg::TestSignal::parse(u), nugg::make_point(s->s, theta, r));
    });
}

} /* extern "C" */
