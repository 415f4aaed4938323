// End-to-end checks of the command line binary: exit codes, file schemas,
// byte-level reproducibility.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#ifndef NUGG_CLI_PATH
#error "NUGG_CLI_PATH must point at the nugg binary"
#endif

namespace {

namespace fs = std::filesystem;

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / ("nugg_cli_" + name)) {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string str() const { return path.string(); }
};

int run(const std::string& args) {
    const std::string cmd = std::string(NUGG_CLI_PATH) + " " + args + " >/dev/null 2>&1";
    const int rc = std::system(cmd.c_str());
    return WEXITSTATUS(rc);
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

bool same_bytes(const fs::path& a, const fs::path& b) { return slurp(a) == slurp(b); }

}  // namespace

TEST_CASE("gen writes parseable, reproducible artifacts") {
    TempDir d1("gen1"), d2("gen2");
    const std::string flags = "gen --space s1 --density uniform --n 400 --alpha 0.05 --seed 7 --out ";
    REQUIRE(run(flags + d1.str()) == 0);
    REQUIRE(run(flags + d2.str()) == 0);
    for (const char* f : {"nodes.csv", "edges.csv", "graph.json", "config.json"}) {
        CHECK(fs::exists(d1.path / f));
        CHECK(same_bytes(d1.path / f, d2.path / f));
    }
    const auto graph = nlohmann::json::parse(slurp(d1.path / "graph.json"));
    CHECK(graph["nodes"].size() == 400);
    CHECK(graph["edges"].is_array());
    CHECK(graph["nodes"][0].contains("theta"));
    CHECK(graph["nodes"][0].contains("rho"));
    CHECK(graph["nodes"][0].contains("radius"));
    const std::string nodes = slurp(d1.path / "nodes.csv");
    CHECK(nodes.rfind("id,theta,r,rho,hub,radius,degree\n", 0) == 0);
    const std::string edges = slurp(d1.path / "edges.csv");
    CHECK(edges.rfind("u,v\n", 0) == 0);
}

TEST_CASE("gen validates flags") {
    TempDir d("genbad");
    CHECK(run("gen --space s1 --out " + d.str()) == 2);          // missing --n
    CHECK(run("gen --n 10 --alpha nope --out " + d.str()) == 2);  // malformed alpha
    CHECK(run("gen --n 10 --space klein --out " + d.str()) == 2);
    CHECK(run("totally-unknown-command") == 2);
}

TEST_CASE("gso spectrum and determinism") {
    TempDir g("gsograph"), o1("gso1"), o2("gso2");
    REQUIRE(run("gen --space s1 --density uniform --n 300 --alpha auto --seed 3 --out " + g.str()) ==
            0);
    const std::string graph = (g.path / "graph.json").string();
    REQUIRE(run("gso --graph " + graph + " --preset eq8 --out " + o1.str()) == 0);
    REQUIRE(run("gso --graph " + graph + " --preset eq8 --out " + o2.str()) == 0);
    for (const char* f : {"gso.csv", "gso.txt", "spectrum.json", "config.json"})
        CHECK(same_bytes(o1.path / f, o2.path / f));
    const auto spectrum = nlohmann::json::parse(slurp(o1.path / "spectrum.json"));
    CHECK(spectrum["n"].get<int>() == 300);
    CHECK(spectrum["spectral_radius"].get<double>() <= 2.0 * std::sqrt(300.0));
    CHECK(spectrum["lambda_max"].get<double>() <= 1e-10);

    CHECK(run("gso --graph missing.json --out " + o1.str()) == 2);
    CHECK(run("gso --graph " + graph + " --preset bogus --out " + o1.str()) == 2);
    CHECK(run("gso --graph " + graph + " --rho sideways --out " + o1.str()) == 2);
}

TEST_CASE("gso row-sum identity for the degree-averaging preset") {
    TempDir g("rsgraph"), o("rsout");
    REQUIRE(run("gen --space s1 --density uniform --n 200 --alpha auto --seed 9 --out " + g.str()) ==
            0);
    REQUIRE(run("gso --graph " + (g.path / "graph.json").string() + " --preset random_walk --out " +
                o.str()) == 0);
    // off-diagonal row sums equal minus the diagonal entry
    std::ifstream in(o.path / "gso.csv");
    std::string line;
    int row = 0;
    while (std::getline(in, line)) {
        std::stringstream ss(line);
        std::string cell;
        double diag = 0.0, off = 0.0;
        int col = 0;
        while (std::getline(ss, cell, ',')) {
            const double v = std::stod(cell);
            if (col == row)
                diag = v;
            else
                off += v;
            ++col;
        }
        CHECK(off == doctest::Approx(-diag).epsilon(1e-12));
        ++row;
    }
    CHECK(row == 200);
}

TEST_CASE("converge reports a near-zero error for constants and a slope for harmonics") {
    TempDir o("cvg");
    REQUIRE(run("converge --space s1 --density uniform --u constant --n-grid 200,400 --trials 5 "
                "--alpha 0.3 --seed 2 --out " +
                o.str()) == 0);
    auto rep = nlohmann::json::parse(slurp(o.path / "report.json"));
    for (const auto& m : rep["mse"]) CHECK(m.get<double>() <= 1e-20);
    const std::string csv = slurp(o.path / "report.csv");
    CHECK(csv.rfind("N,trial,mse,sup_err\n", 0) == 0);

    TempDir o2("cvg2"), o3("cvg3");
    const std::string flags =
        "converge --space s1 --density uniform --u cos:1 --n-grid 300,900 --trials 5 --alpha 0.25 "
        "--seed 4 --out ";
    REQUIRE(run(flags + o2.str()) == 0);
    REQUIRE(run(flags + o3.str()) == 0);
    for (const char* f : {"report.csv", "report.json", "config.json"})
        CHECK(same_bytes(o2.path / f, o3.path / f));
    auto rep2 = nlohmann::json::parse(slurp(o2.path / "report.json"));
    CHECK(rep2["fitted_slope"].get<double>() < 0.0);
    CHECK(rep2["mse"][1].get<double>() < rep2["mse"][0].get<double>());
}

TEST_CASE("hyperbolic generation matches the tail formula, sphere falls back to quadrature") {
    TempDir g("hyp"), o("hypout");
    REQUIRE(run("gen --space hyperbolic --R 12 --n 2000 --alpha 12 --seed 6 --out " + g.str()) == 0);
    // mean degree within the documented 25% of 8 N e^{(alpha - 2R)/2} / pi
    std::stringstream ss(slurp(g.path / "nodes.csv"));
    std::string line;
    std::getline(ss, line);
    double deg_sum = 0.0;
    long count = 0;
    while (std::getline(ss, line)) {
        deg_sum += std::stod(line.substr(line.rfind(',') + 1));
        ++count;
    }
    REQUIRE(count == 2000);
    const double expect = 8.0 * 2000 * std::exp(0.5 * (12.0 - 24.0)) / M_PI;
    CHECK(std::abs(deg_sum / count - expect) / expect < 0.25);

    TempDir sg("sph"), so("sphout");
    REQUIRE(run("gen --space sphere --n 200 --alpha 0.6 --seed 2 --out " + sg.str()) == 0);
    REQUIRE(run("degrees --graph " + (sg.path / "graph.json").string() + " --out " + so.str()) == 0);
    const auto cfg = nlohmann::json::parse(slurp(so.path / "config.json"));
    CHECK(cfg["method"].get<std::string>() == "quadrature");
}

TEST_CASE("config files reproduce runs, flags override") {
    TempDir d1("cfg1"), d2("cfg2"), d3("cfg3");
    const std::string flags =
        "gen --space s1 --density uniform --n 250 --hubs 1 --alpha auto --seed 13 --out ";
    REQUIRE(run(flags + d1.str()) == 0);
    REQUIRE(run("gen --config " + (d1.path / "config.json").string() + " --out " + d2.str()) == 0);
    for (const char* f : {"nodes.csv", "edges.csv", "graph.json"})
        CHECK(same_bytes(d1.path / f, d2.path / f));
    // an explicit flag wins over the config value
    REQUIRE(run("gen --config " + (d1.path / "config.json").string() + " --seed 14 --out " +
                d3.str()) == 0);
    CHECK_FALSE(same_bytes(d1.path / "graph.json", d3.path / "graph.json"));
    CHECK(run("gen --config nowhere.json --out " + d3.str()) == 2);
    // config without n still fails validation
    TempDir d4("cfg4");
    std::ofstream(d4.path / "empty.json") << "{}";
    CHECK(run("gen --config " + (d4.path / "empty.json").string() + " --out " + d4.str()) == 2);
}

TEST_CASE("degrees and estimate pipelines") {
    TempDir g("deg"), o("degout");
    REQUIRE(run("gen --space s1 --density "
                "\"{\\\"type\\\":\\\"sbrv\\\",\\\"c\\\":[1.0],\\\"n\\\":[1],\\\"mu\\\":[0.0]}\" "
                "--n 2000 --alpha 0.05 --seed 21 --out " +
                g.str()) == 0);
    const std::string graph = (g.path / "graph.json").string();
    REQUIRE(run("degrees --graph " + graph + " --out " + o.str()) == 0);
    const std::string csv = slurp(o.path / "degrees.csv");
    CHECK(csv.rfind("id,degree,expected_degree,rho\n", 0) == 0);
    // expected and empirical degrees correlate strongly on a tilted density
    std::stringstream ss(csv);
    std::string line;
    std::getline(ss, line);
    std::vector<double> emp, exp;
    while (std::getline(ss, line)) {
        std::stringstream row(line);
        std::string cell;
        std::getline(row, cell, ',');
        std::getline(row, cell, ',');
        emp.push_back(std::stod(cell));
        std::getline(row, cell, ',');
        exp.push_back(std::stod(cell));
    }
    REQUIRE(emp.size() == 2000);
    double me = 0, mx = 0;
    for (std::size_t i = 0; i < emp.size(); ++i) {
        me += emp[i];
        mx += exp[i];
    }
    me /= emp.size();
    mx /= exp.size();
    double sxy = 0, sxx = 0, syy = 0;
    for (std::size_t i = 0; i < emp.size(); ++i) {
        sxy += (emp[i] - me) * (exp[i] - mx);
        sxx += (emp[i] - me) * (emp[i] - me);
        syy += (exp[i] - mx) * (exp[i] - mx);
    }
    CHECK(sxy / std::sqrt(sxx * syy) > 0.8);

    REQUIRE(run("estimate --graph " + graph + " --out " + o.str()) == 0);
    const std::string est = slurp(o.path / "estimate.csv");
    CHECK(est.rfind("id,theta,r,rho,hub,radius,degree,rho_hat,defined\n", 0) == 0);
    CHECK(run("estimate --graph nowhere.json --out " + o.str()) == 2);
    CHECK(run("degrees --graph nowhere.json --out " + o.str()) == 2);
    CHECK(run("estimate --graph " + graph + " --volumes sometimes --out " + o.str()) == 2);
}
