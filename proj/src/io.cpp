#include "io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "error.hpp"

namespace nugg {

std::string format_double(double v) {
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

void write_file_atomic(const std::string& path, const std::string& text) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) fail(Errc::io, "cannot open " + tmp + " for writing");
        out << text;
        if (!out.flush()) fail(Errc::io, "short write to " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) fail(Errc::io, "cannot rename " + tmp);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(Errc::io, "cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string graph_to_json(const GraphBundle& b) {
    const GeometricGraph& g = b.graph;
    nlohmann::json j;
    j["space"]["kind"] = to_string(g.space.kind);
    if (g.space.kind == SpaceKind::HyperbolicDisk) j["space"]["R"] = g.space.R;
    j["density"] = nlohmann::json::parse(b.density.to_json());
    j["config"] = {{"alpha", g.alpha}, {"beta", g.beta}, {"eps", g.eps},
                   {"seed", g.seed},   {"n", g.num_nodes()}};
    j["config"]["hub_seeds"] = g.hub_seeds;
    nlohmann::json nodes = nlohmann::json::array();
    for (long i = 0; i < g.num_nodes(); ++i) {
        nlohmann::json node;
        node["theta"] = g.positions[i].theta;
        if (g.space.has_radial()) node["r"] = g.positions[i].r;
        node["rho"] = g.rho[i];
        node["hub"] = static_cast<bool>(g.hub[i]);
        node["radius"] = g.radius[i];
        nodes.push_back(std::move(node));
    }
    j["nodes"] = std::move(nodes);
    nlohmann::json edges = nlohmann::json::array();
    for (const auto& [u, v] : g.edges) edges.push_back({u, v});
    j["edges"] = std::move(edges);
    return j.dump();
}

GraphBundle graph_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const std::exception& e) {
        fail(Errc::io, std::string("graph json: ") + e.what());
    }
    try {
        GraphBundle b;
        const std::string kind = j.at("space").at("kind").get<std::string>();
        const SpaceKind sk = space_kind_from_string(kind);
        if (sk == SpaceKind::HyperbolicDisk)
            b.graph.space = LatentSpace::hyperbolic_disk(j["space"].at("R").get<double>());
        else
            b.graph.space = LatentSpace{sk, sk == SpaceKind::UnitDisk ? 1.0 : 0.0};
        b.density = AngularDensity::from_json(j.at("density").dump());
        GeometricGraph& g = b.graph;
        g.alpha = j.at("config").at("alpha").get<double>();
        g.beta = j.at("config").at("beta").get<double>();
        g.eps = j.at("config").at("eps").get<double>();
        g.seed = j.at("config").at("seed").get<std::uint64_t>();
        if (j["config"].contains("hub_seeds"))
            g.hub_seeds = j["config"]["hub_seeds"].get<std::vector<int>>();
        for (const auto& node : j.at("nodes")) {
            g.positions.push_back(Point{node.at("theta").get<double>(), node.value("r", 0.0)});
            g.rho.push_back(node.at("rho").get<double>());
            g.hub.push_back(node.at("hub").get<bool>() ? 1 : 0);
            g.radius.push_back(node.at("radius").get<double>());
        }
        for (const auto& e : j.at("edges")) {
            const int u = e.at(0).get<int>(), v = e.at(1).get<int>();
            if (u < 0 || v < 0 || u >= g.num_nodes() || v >= g.num_nodes() || u == v)
                fail(Errc::io, "graph json: edge endpoint out of range");
            g.edges.emplace_back(std::min(u, v), std::max(u, v));
        }
        return b;
    } catch (const Error&) {
        throw;
    } catch (const std::exception& e) {
        fail(Errc::io, std::string("graph json: ") + e.what());
    }
}

std::string graph_nodes_csv(const GeometricGraph& g) {
    const auto deg = g.degrees();
    std::string out = "id,theta,r,rho,hub,radius,degree\n";
    for (long i = 0; i < g.num_nodes(); ++i) {
        out += std::to_string(i);
        out += ',';
        out += format_double(g.positions[i].theta);
        out += ',';
        out += format_double(g.space.has_radial() ? g.positions[i].r : 0.0);
        out += ',';
        out += format_double(g.rho[i]);
        out += ',';
        out += g.hub[i] ? '1' : '0';
        out += ',';
        out += format_double(g.radius[i]);
        out += ',';
        out += std::to_string(deg[i]);
        out += '\n';
    }
    return out;
}

std::string graph_edges_csv(const GeometricGraph& g) {
    std::string out = "u,v\n";
    for (const auto& [u, v] : g.edges) {
        out += std::to_string(u);
        out += ',';
        out += std::to_string(v);
        out += '\n';
    }
    return out;
}

std::string matrix_to_csv(const DenseMatrix& m) {
    std::string out;
    for (int i = 0; i < m.n; ++i) {
        for (int j = 0; j < m.n; ++j) {
            if (j) out += ',';
            out += format_double(m.at(i, j));
        }
        out += '\n';
    }
    return out;
}

std::string matrix_to_coo(const DenseMatrix& m) {
    std::string out;
    for (int i = 0; i < m.n; ++i)
        for (int j = 0; j < m.n; ++j)
            if (m.at(i, j) != 0.0) {
                out += std::to_string(i);
                out += ' ';
                out += std::to_string(j);
                out += ' ';
                out += format_double(m.at(i, j));
                out += '\n';
            }
    return out;
}

std::string report_to_csv(const ConvergenceReport& r) {
    std::string out = "N,trial,mse,sup_err\n";
    for (const auto& s : r.samples) {
        out += std::to_string(s.n);
        out += ',';
        out += std::to_string(s.trial);
        out += ',';
        out += format_double(s.mse);
        out += ',';
        out += format_double(s.sup_err);
        out += '\n';
    }
    return out;
}

std::string report_to_json(const ConvergenceReport& r) {
    nlohmann::json j;
    j["n_grid"] = r.n_grid;
    j["mse"] = r.mse;
    j["sup_err"] = r.sup_err;
    j["trials"] = r.trials;
    j["p"] = r.p;
    j["fitted_slope"] = r.fitted_slope;
    j["config"] = nlohmann::json::parse(r.config_json);
    nlohmann::json samples = nlohmann::json::array();
    for (const auto& s : r.samples)
        samples.push_back({{"N", s.n}, {"trial", s.trial}, {"mse", s.mse}, {"sup_err", s.sup_err}});
    j["samples"] = std::move(samples);
    return j.dump(2);
}

}  // namespace nugg
