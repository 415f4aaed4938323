// nugg command line: generate graphs, build shift operators, run degree /
// spectrum / convergence experiments, emit CSV/JSON artifacts.
//
// Exit codes: 0 success, 1 runtime/numeric failure, 2 usage or validation.

#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "nugg/nugg.h"

namespace {

using nlohmann::json;

class CliError : public std::runtime_error {
public:
    CliError(int code, const std::string& what) : std::runtime_error(what), exit_code(code) {}
    int exit_code;
};

int exit_code_of(nugg_status st) {
    switch (st) {
        case NUGG_OK: return 0;
        case NUGG_ERR_INVALID:
        case NUGG_ERR_DOMAIN:
        case NUGG_ERR_CAPABILITY: return 2;
        default: return 1;
    }
}

void check(nugg_status st) {
    if (st != NUGG_OK) throw CliError(exit_code_of(st), nugg_last_error());
}

std::string fmt(double v) {
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

void write_atomic(const std::string& path, const std::string& text) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw CliError(1, "cannot open " + tmp);
        out << text;
        if (!out.flush()) throw CliError(1, "short write to " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) throw CliError(1, "cannot rename " + tmp);
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw CliError(2, "cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// "@file.json" loads from disk, anything else is taken literally
std::string density_spec_text(const std::string& arg) {
    if (!arg.empty() && arg[0] == '@') return slurp(arg.substr(1));
    return arg;
}

// missing input files are a usage error, not a runtime failure
void require_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw CliError(2, "input file not found: " + path);
}

struct SpaceHandle {
    nugg_space* p = nullptr;
    ~SpaceHandle() { nugg_space_free(p); }
};
struct DensityHandle {
    nugg_density* p = nullptr;
    ~DensityHandle() { nugg_density_free(p); }
};
struct GraphHandle {
    nugg_graph* p = nullptr;
    ~GraphHandle() { nugg_graph_free(p); }
};
struct SpecHandle {
    nugg_gso_spec* p = nullptr;
    ~SpecHandle() { nugg_gso_spec_free(p); }
};
struct MatrixHandle {
    nugg_matrix* p = nullptr;
    ~MatrixHandle() { nugg_matrix_free(p); }
};
struct ReportHandle {
    nugg_report* p = nullptr;
    ~ReportHandle() { nugg_report_free(p); }
};

std::string density_json(const nugg_density* d) {
    char* s = nullptr;
    check(nugg_density_to_json(d, &s));
    std::string out = s;
    nugg_string_free(s);
    return out;
}

std::string spec_json(const nugg_gso_spec* s) {
    char* j = nullptr;
    check(nugg_gso_spec_to_json(s, &j));
    std::string out = j;
    nugg_string_free(j);
    return out;
}

// --config file values seed the option defaults; explicit flags still win
// because CLI11 only writes options that appear on the command line
json preload_config(int argc, char** argv) {
    for (int i = 1; i + 1 < argc; ++i) {
        if (std::string(argv[i]) == "--config") {
            try {
                return json::parse(slurp(argv[i + 1]));
            } catch (const json::exception& e) {
                throw CliError(2, std::string("config: ") + e.what());
            }
        }
    }
    return json::object();
}

template <class T>
void from_cfg(const json& c, const char* key, T& value) {
    if (!c.contains(key)) return;
    try {
        value = c[key].get<T>();
    } catch (const json::exception&) {
        // the same key can carry another type for a different subcommand
        // (gen's alpha is "auto"-or-number, converge's is numeric): skip
    }
}

// accepts both the literal string form and a plain number
void from_cfg_number_or_string(const json& c, const char* key, std::string& value) {
    if (!c.contains(key)) return;
    value = c[key].is_string() ? c[key].get<std::string>() : c[key].dump();
}

// density / spec entries may be echoed objects rather than literal strings
void from_cfg_json_or_string(const json& c, const char* key, std::string& value) {
    if (!c.contains(key)) return;
    value = c[key].is_string() ? c[key].get<std::string>() : c[key].dump();
}

void from_cfg_grid(const json& c, const char* key, std::string& value) {
    if (!c.contains(key)) return;
    if (c[key].is_string()) {
        value = c[key].get<std::string>();
        return;
    }
    value.clear();
    for (const auto& item : c[key]) {
        if (!value.empty()) value += ',';
        value += std::to_string(item.get<long>());
    }
}

double parse_alpha(const std::string& s) {
    if (s == "auto") return -1.0;
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size() || !(v > 0.0)) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw CliError(2, "--alpha expects a positive number or 'auto'");
    }
}

std::vector<long> parse_grid(const std::string& s) {
    std::vector<long> grid;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            grid.push_back(std::stol(item));
        } catch (const std::exception&) {
            throw CliError(2, "--n-grid expects a comma-separated integer list");
        }
    }
    if (grid.empty()) throw CliError(2, "--n-grid expects a comma-separated integer list");
    return grid;
}

struct NodeColumns {
    std::vector<double> theta, r, rho, radius;
    std::vector<int> hub, degree;
};

NodeColumns fetch_nodes(nugg_graph* g) {
    const long n = nugg_graph_num_nodes(g);
    NodeColumns c;
    c.theta.resize(n);
    c.r.resize(n);
    c.rho.resize(n);
    c.radius.resize(n);
    c.hub.resize(n);
    c.degree.resize(n);
    check(nugg_graph_nodes(g, c.theta.data(), c.r.data(), c.rho.data(), c.hub.data(),
                           c.radius.data(), c.degree.data()));
    return c;
}

double pearson(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = x.size();
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxy = 0, sxx = 0, syy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (sxx == 0 || syy == 0) return 0.0;
    return sxy / std::sqrt(sxx * syy);
}

// ---- gen ------------------------------------------------------------------

struct GenOptions {
    std::string space = "s1";
    double R = 12.0;
    std::string density = "uniform";
    long n = 0;
    std::string alpha = "auto";
    double beta = -1.0, eps = -1.0;
    long hubs = 0;
    std::uint64_t seed = 0;
    std::string out = ".";
};

int run_gen(const GenOptions& o) {
    if (o.n < 1) throw CliError(2, "gen: --n (or a config value) is required and must be >= 1");
    SpaceHandle space;
    check(nugg_space_create(o.space.c_str(), o.R, &space.p));
    DensityHandle density;
    check(nugg_density_create(density_spec_text(o.density).c_str(), &density.p));

    nugg_hub_config hc{o.n, o.hubs, parse_alpha(o.alpha), o.beta, o.eps, o.seed};
    GraphHandle graph;
    check(nugg_graph_generate(space.p, density.p, &hc, &graph.p));

    check(nugg_graph_write_json(graph.p, (o.out + "/graph.json").c_str()));
    check(nugg_graph_write_csv(graph.p, (o.out + "/nodes.csv").c_str(),
                               (o.out + "/edges.csv").c_str()));

    json cfg;
    cfg["command"] = "gen";
    cfg["space"] = o.space;
    if (o.space == "hyperbolic") cfg["R"] = o.R;
    cfg["density"] = json::parse(density_json(density.p));
    cfg["n"] = o.n;
    cfg["alpha"] = o.alpha;
    cfg["beta"] = o.beta;
    cfg["eps"] = o.eps;
    cfg["hubs"] = o.hubs;
    cfg["seed"] = o.seed;
    cfg["resolved"] = {{"alpha", nugg_graph_alpha(graph.p)},
                       {"beta", nugg_graph_beta(graph.p)},
                       {"eps", nugg_graph_eps(graph.p)}};
    write_atomic(o.out + "/config.json", cfg.dump(2) + "\n");

    const long nn = nugg_graph_num_nodes(graph.p);
    const long ne = nugg_graph_num_edges(graph.p);
    std::printf("nodes: %ld\nedges: %ld\nmean_degree: %s\nhubs: %ld\nalpha: %s\n", nn, ne,
                fmt(2.0 * static_cast<double>(ne) / static_cast<double>(nn)).c_str(),
                nugg_graph_hub_count(graph.p), fmt(nugg_graph_alpha(graph.p)).c_str());
    return 0;
}

// ---- gso ------------------------------------------------------------------

struct GsoOptions {
    std::string graph;
    std::string preset = "random_walk";
    std::string spec;  // raw JSON, overrides --preset
    std::string rho = "true";
    std::string out = ".";
};

int run_gso(const GsoOptions& o) {
    if (o.graph.empty()) throw CliError(2, "gso: --graph is required");
    require_file(o.graph);
    GraphHandle graph;
    check(nugg_graph_read_json(o.graph.c_str(), &graph.p));
    SpecHandle spec;
    if (!o.spec.empty())
        check(nugg_gso_spec_parse(o.spec.c_str(), &spec.p));
    else
        check(nugg_gso_spec_preset(o.preset.c_str(), &spec.p));

    MatrixHandle m;
    check(nugg_gso_build_from_graph(graph.p, o.rho.c_str(), spec.p, &m.p));
    check(nugg_matrix_write_csv(m.p, (o.out + "/gso.csv").c_str()));
    check(nugg_matrix_write_coo(m.p, (o.out + "/gso.txt").c_str()));

    // eigen summary only for symmetric operators (the degree-averaging
    // presets produce similar-to-symmetric but not symmetric matrices)
    const bool symmetric = nugg_matrix_is_symmetric(m.p) != 0;
    double radius = 0, lmin = 0, lmax = 0;
    json spectrum;
    spectrum["n"] = nugg_matrix_dim(m.p);
    spectrum["symmetric"] = symmetric;
    if (symmetric) {
        check(nugg_matrix_spectral_radius(m.p, &radius));
        check(nugg_matrix_extreme_eigenvalues(m.p, &lmin, &lmax));
        spectrum["spectral_radius"] = radius;
        spectrum["lambda_min"] = lmin;
        spectrum["lambda_max"] = lmax;
    }
    write_atomic(o.out + "/spectrum.json", spectrum.dump(2) + "\n");

    json cfg;
    cfg["command"] = "gso";
    cfg["graph"] = o.graph;
    cfg["spec"] = json::parse(spec_json(spec.p));
    cfg["rho"] = o.rho;
    write_atomic(o.out + "/config.json", cfg.dump(2) + "\n");

    if (symmetric)
        std::printf("n: %d\nspectral_radius: %s\nlambda_min: %s\nlambda_max: %s\n",
                    nugg_matrix_dim(m.p), fmt(radius).c_str(), fmt(lmin).c_str(), fmt(lmax).c_str());
    else
        std::printf("n: %d\nspectral summary skipped: operator is not symmetric\n",
                    nugg_matrix_dim(m.p));
    return 0;
}

// ---- converge ---------------------------------------------------------------

struct ConvergeOptions {
    std::string space = "s1";
    double R = 12.0;
    std::string density = "uniform";
    std::string preset = "random_walk";
    std::string spec;
    std::string u = "cos:1";
    std::string grid = "500,1000,2000,4000,8000";
    int trials = 10;
    double p = 0.05;
    double alpha = 0.2;
    long hubs = 0;
    double beta = -1.0, eps = -1.0;
    std::string rho = "true";
    std::uint64_t seed = 0;
    int probes = 64;
    std::string out = ".";
};

int run_converge(const ConvergeOptions& o) {
    SpaceHandle space;
    check(nugg_space_create(o.space.c_str(), o.R, &space.p));
    DensityHandle density;
    check(nugg_density_create(density_spec_text(o.density).c_str(), &density.p));
    SpecHandle spec;
    if (!o.spec.empty())
        check(nugg_gso_spec_parse(o.spec.c_str(), &spec.p));
    else
        check(nugg_gso_spec_preset(o.preset.c_str(), &spec.p));

    const auto grid = parse_grid(o.grid);
    nugg_convergence_config cc{};
    cc.n_grid = grid.data();
    cc.n_count = static_cast<int>(grid.size());
    cc.trials = o.trials;
    cc.u = o.u.c_str();
    cc.p = o.p;
    cc.alpha = o.alpha;
    cc.hubs = o.hubs;
    cc.beta = o.beta;
    cc.eps = o.eps;
    cc.rho_mode = o.rho.c_str();
    cc.seed = o.seed;
    cc.probes = o.probes;
    cc.threads = 0;

    ReportHandle report;
    check(nugg_convergence_run(space.p, density.p, spec.p, &cc, &report.p));
    check(nugg_report_write_csv(report.p, (o.out + "/report.csv").c_str()));
    check(nugg_report_write_json(report.p, (o.out + "/report.json").c_str()));

    json cfg;
    cfg["command"] = "converge";
    cfg["space"] = o.space;
    if (o.space == "hyperbolic") cfg["R"] = o.R;
    cfg["density"] = json::parse(density_json(density.p));
    cfg["spec"] = json::parse(spec_json(spec.p));
    cfg["u"] = o.u;
    cfg["n_grid"] = grid;
    cfg["trials"] = o.trials;
    cfg["p"] = o.p;
    cfg["alpha"] = o.alpha;
    cfg["hubs"] = o.hubs;
    cfg["beta"] = o.beta;
    cfg["eps"] = o.eps;
    cfg["rho"] = o.rho;
    cfg["seed"] = o.seed;
    cfg["probes"] = o.probes;
    write_atomic(o.out + "/config.json", cfg.dump(2) + "\n");

    const int gs = nugg_report_grid_size(report.p);
    std::vector<long> ns(gs);
    std::vector<double> mse(gs), sup(gs);
    check(nugg_report_per_n(report.p, ns.data(), mse.data(), sup.data()));
    for (int i = 0; i < gs; ++i)
        std::printf("N=%ld mse=%s sup_err=%s\n", ns[i], fmt(mse[i]).c_str(), fmt(sup[i]).c_str());
    std::printf("fitted_slope: %s\n", fmt(nugg_report_slope(report.p)).c_str());
    return 0;
}

// ---- degrees ----------------------------------------------------------------

struct DegreesOptions {
    std::string graph;
    std::string out = ".";
};

int run_degrees(const DegreesOptions& o) {
    if (o.graph.empty()) throw CliError(2, "degrees: --graph is required");
    require_file(o.graph);
    GraphHandle graph;
    check(nugg_graph_read_json(o.graph.c_str(), &graph.p));
    SpaceHandle space;
    check(nugg_graph_space(graph.p, &space.p));
    DensityHandle density;
    check(nugg_graph_density(graph.p, &density.p));

    const long n = nugg_graph_num_nodes(graph.p);
    const double alpha = nugg_graph_alpha(graph.p);
    const auto cols = fetch_nodes(graph.p);

    // closed form when the space/density pair supports it, quadrature otherwise
    int method = 0;
    {
        double probe = 0;
        if (nugg_expected_degree(space.p, density.p, cols.theta[0], cols.r[0], alpha,
                                 static_cast<double>(n), 0, &probe) == NUGG_ERR_CAPABILITY)
            method = 1;
    }
    std::vector<double> expected(n), empirical(n);
    for (long i = 0; i < n; ++i) {
        check(nugg_expected_degree(space.p, density.p, cols.theta[i], cols.r[i], alpha,
                                   static_cast<double>(n), method, &expected[i]));
        empirical[i] = cols.degree[i];
    }

    std::string csv = "id,degree,expected_degree,rho\n";
    for (long i = 0; i < n; ++i) {
        csv += std::to_string(i);
        csv += ',';
        csv += std::to_string(cols.degree[i]);
        csv += ',';
        csv += fmt(expected[i]);
        csv += ',';
        csv += fmt(cols.rho[i]);
        csv += '\n';
    }
    write_atomic(o.out + "/degrees.csv", csv);

    json cfg;
    cfg["command"] = "degrees";
    cfg["graph"] = o.graph;
    cfg["method"] = method == 0 ? "closed_form" : "quadrature";
    write_atomic(o.out + "/config.json", cfg.dump(2) + "\n");

    std::printf("nodes: %ld\npearson_expected_vs_empirical: %s\n", n,
                fmt(pearson(expected, empirical)).c_str());
    return 0;
}

// ---- estimate ----------------------------------------------------------------

struct EstimateOptions {
    std::string graph;
    std::string volumes = "auto";  // auto | none
    std::string out = ".";
};

int run_estimate(const EstimateOptions& o) {
    if (o.graph.empty()) throw CliError(2, "estimate: --graph is required");
    require_file(o.graph);
    GraphHandle graph;
    check(nugg_graph_read_json(o.graph.c_str(), &graph.p));
    const long n = nugg_graph_num_nodes(graph.p);
    const auto cols = fetch_nodes(graph.p);

    std::vector<double> volumes(n);
    bool have_volumes = false;
    if (o.volumes == "auto") {
        const nugg_status st = nugg_graph_neighborhood_volumes(graph.p, volumes.data());
        if (st == NUGG_OK)
            have_volumes = true;
        else if (st != NUGG_ERR_CAPABILITY)
            check(st);
    } else if (o.volumes != "none") {
        throw CliError(2, "--volumes expects auto|none");
    }

    std::vector<double> rho_hat(n);
    std::vector<int> defined(n);
    check(nugg_estimate_density(graph.p, have_volumes ? volumes.data() : nullptr, rho_hat.data(),
                                defined.data()));

    // node sidecar columns with the estimate merged in
    std::string csv = "id,theta,r,rho,hub,radius,degree,rho_hat,defined\n";
    for (long i = 0; i < n; ++i) {
        csv += std::to_string(i);
        csv += ',';
        csv += fmt(cols.theta[i]);
        csv += ',';
        csv += fmt(cols.r[i]);
        csv += ',';
        csv += fmt(cols.rho[i]);
        csv += ',';
        csv += std::to_string(cols.hub[i]);
        csv += ',';
        csv += fmt(cols.radius[i]);
        csv += ',';
        csv += std::to_string(cols.degree[i]);
        csv += ',';
        csv += fmt(rho_hat[i]);
        csv += ',';
        csv += std::to_string(defined[i]);
        csv += '\n';
    }
    write_atomic(o.out + "/estimate.csv", csv);

    json cfg;
    cfg["command"] = "estimate";
    cfg["graph"] = o.graph;
    cfg["volumes"] = have_volumes ? "auto" : "none";
    write_atomic(o.out + "/config.json", cfg.dump(2) + "\n");

    double err2 = 0.0, norm2 = 0.0;
    std::vector<double> defined_rho;
    for (long i = 0; i < n; ++i) {
        if (!defined[i]) continue;
        defined_rho.push_back(rho_hat[i]);
        err2 += (rho_hat[i] - cols.rho[i]) * (rho_hat[i] - cols.rho[i]);
        norm2 += cols.rho[i] * cols.rho[i];
    }
    std::sort(defined_rho.begin(), defined_rho.end());
    const double med =
        defined_rho.empty()
            ? 0.0
            : (defined_rho.size() % 2 ? defined_rho[defined_rho.size() / 2]
                                      : 0.5 * (defined_rho[defined_rho.size() / 2 - 1] +
                                               defined_rho[defined_rho.size() / 2]));
    std::printf("nodes: %ld\nmethod: %s\nmedian_rho_hat: %s\nrel_l2_error: %s\n", n,
                have_volumes ? "degree_over_volume" : "degree_only", fmt(med).c_str(),
                fmt(norm2 > 0 ? std::sqrt(err2 / norm2) : 0.0).c_str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    json cfg0;
    try {
        cfg0 = preload_config(argc, argv);
    } catch (const CliError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return e.exit_code;
    }
    std::string config_path;

    CLI::App app{"non-uniform geometric graphs: generation, corrected shift operators, experiments"};
    app.require_subcommand(1);

    GenOptions gen;
    from_cfg(cfg0, "space", gen.space);
    from_cfg(cfg0, "R", gen.R);
    from_cfg_json_or_string(cfg0, "density", gen.density);
    from_cfg(cfg0, "n", gen.n);
    from_cfg_number_or_string(cfg0, "alpha", gen.alpha);
    from_cfg(cfg0, "beta", gen.beta);
    from_cfg(cfg0, "eps", gen.eps);
    from_cfg(cfg0, "hubs", gen.hubs);
    from_cfg(cfg0, "seed", gen.seed);
    auto* cmd_gen = app.add_subcommand("gen", "generate a geometric graph with hubs");
    cmd_gen->add_option("--space", gen.space, "s1|disk|sphere|hyperbolic");
    cmd_gen->add_option("--R", gen.R, "hyperbolic disk radius");
    cmd_gen->add_option("--density", gen.density, "uniform, JSON object, or @file");
    cmd_gen->add_option("--n", gen.n, "node count");
    cmd_gen->add_option("--alpha", gen.alpha, "base radius or 'auto'");
    cmd_gen->add_option("--beta", gen.beta, "hub radius increment (default 3 alpha)");
    cmd_gen->add_option("--eps", gen.eps, "hub spreading distance (default alpha/10)");
    cmd_gen->add_option("--hubs", gen.hubs, "hub seed count");
    cmd_gen->add_option("--seed", gen.seed, "random seed");
    cmd_gen->add_option("--out", gen.out, "output directory");
    cmd_gen->add_option("--config", config_path, "JSON config; flags override its values");

    GsoOptions gso;
    from_cfg(cfg0, "graph", gso.graph);
    from_cfg(cfg0, "preset", gso.preset);
    from_cfg_json_or_string(cfg0, "spec", gso.spec);
    from_cfg(cfg0, "rho", gso.rho);
    auto* cmd_gso = app.add_subcommand("gso", "build a density-corrected shift operator");
    cmd_gso->add_option("--graph", gso.graph, "graph.json path");
    cmd_gso->add_option("--preset", gso.preset, "operator preset name");
    cmd_gso->add_option("--spec", gso.spec, "modulation JSON {m1..m4}");
    cmd_gso->add_option("--rho", gso.rho, "true|ignore|estimate");
    cmd_gso->add_option("--out", gso.out, "output directory");
    cmd_gso->add_option("--config", config_path, "JSON config; flags override its values");

    ConvergeOptions cvg;
    from_cfg(cfg0, "space", cvg.space);
    from_cfg(cfg0, "R", cvg.R);
    from_cfg_json_or_string(cfg0, "density", cvg.density);
    from_cfg(cfg0, "preset", cvg.preset);
    from_cfg_json_or_string(cfg0, "spec", cvg.spec);
    from_cfg(cfg0, "u", cvg.u);
    from_cfg_grid(cfg0, "n_grid", cvg.grid);
    from_cfg(cfg0, "trials", cvg.trials);
    from_cfg(cfg0, "p", cvg.p);
    if (cfg0.contains("alpha") && cfg0["alpha"].is_number()) cvg.alpha = cfg0["alpha"].get<double>();
    from_cfg(cfg0, "hubs", cvg.hubs);
    from_cfg(cfg0, "beta", cvg.beta);
    from_cfg(cfg0, "eps", cvg.eps);
    from_cfg(cfg0, "rho", cvg.rho);
    from_cfg(cfg0, "seed", cvg.seed);
    from_cfg(cfg0, "probes", cvg.probes);
    auto* cmd_cvg = app.add_subcommand("converge", "sampled vs continuous operator error scaling");
    cmd_cvg->add_option("--space", cvg.space, "s1|disk|sphere|hyperbolic");
    cmd_cvg->add_option("--R", cvg.R, "hyperbolic disk radius");
    cmd_cvg->add_option("--density", cvg.density, "uniform, JSON object, or @file");
    cmd_cvg->add_option("--preset", cvg.preset, "operator preset name");
    cmd_cvg->add_option("--spec", cvg.spec, "modulation JSON {m1..m4}");
    cmd_cvg->add_option("--u", cvg.u, "probe signal: constant[:v], cos:k, rpoly:k");
    cmd_cvg->add_option("--n-grid", cvg.grid, "comma-separated node counts");
    cmd_cvg->add_option("--trials", cvg.trials, "trials per grid point");
    cmd_cvg->add_option("--p", cvg.p, "tail probability for the sup-error scaling");
    cmd_cvg->add_option("--alpha", cvg.alpha, "constant neighborhood radius");
    cmd_cvg->add_option("--hubs", cvg.hubs, "hub seeds per trial");
    cmd_cvg->add_option("--beta", cvg.beta, "hub radius increment");
    cmd_cvg->add_option("--eps", cvg.eps, "hub spreading distance");
    cmd_cvg->add_option("--rho", cvg.rho, "true|ignore");
    cmd_cvg->add_option("--seed", cvg.seed, "random seed");
    cmd_cvg->add_option("--probes", cvg.probes, "probe nodes per trial");
    cmd_cvg->add_option("--out", cvg.out, "output directory");
    cmd_cvg->add_option("--config", config_path, "JSON config; flags override its values");

    DegreesOptions deg;
    from_cfg(cfg0, "graph", deg.graph);
    auto* cmd_deg = app.add_subcommand("degrees", "empirical vs expected node degrees");
    cmd_deg->add_option("--graph", deg.graph, "graph.json path");
    cmd_deg->add_option("--out", deg.out, "output directory");
    cmd_deg->add_option("--config", config_path, "JSON config; flags override its values");

    EstimateOptions est;
    from_cfg(cfg0, "graph", est.graph);
    from_cfg(cfg0, "volumes", est.volumes);
    auto* cmd_est = app.add_subcommand("estimate", "degree-based sampling density estimate");
    cmd_est->add_option("--graph", est.graph, "graph.json path");
    cmd_est->add_option("--volumes", est.volumes, "auto|none");
    cmd_est->add_option("--out", est.out, "output directory");
    cmd_est->add_option("--config", config_path, "JSON config; flags override its values");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (cmd_gen->parsed()) return run_gen(gen);
        if (cmd_gso->parsed()) return run_gso(gso);
        if (cmd_cvg->parsed()) return run_converge(cvg);
        if (cmd_deg->parsed()) return run_degrees(deg);
        if (cmd_est->parsed()) return run_estimate(est);
    } catch (const CliError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return e.exit_code;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 2;
}
