#include "gso.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <json.hpp>

#include "error.hpp"
#include "rng.hpp"

namespace nugg {

Modulation Modulation::inv_power(double p) {
    if (!(p > 0.0)) fail(Errc::invalid, "modulation: inverse power must be positive");
    return Modulation(Kind::InvPower, p);
}

Modulation Modulation::custom(std::function<double(double)> f) {
    Modulation m(Kind::Custom, 0.0);
    m.f_ = std::move(f);
    return m;
}

Modulation Modulation::parse(const std::string& token) {
    if (token == "0") return zero();
    if (token == "1") return one();
    if (token == "-1") return neg_one();
    if (token.rfind("inv:", 0) == 0) {
        try {
            return inv_power(std::stod(token.substr(4)));
        } catch (const Error&) {
            throw;
        } catch (const std::exception&) {
            fail(Errc::invalid, "modulation: bad inverse power in '" + token + "'");
        }
    }
    fail(Errc::invalid, "modulation: unknown token '" + token + "'");
}

std::string Modulation::token() const {
    switch (kind_) {
        case Kind::Zero: return "0";
        case Kind::One: return "1";
        case Kind::NegOne: return "-1";
        case Kind::InvPower: {
            // short literal for the preset powers, full precision otherwise
            if (p_ == 1.0) return "inv:1";
            if (p_ == 0.5) return "inv:0.5";
            char buf[48];
            std::snprintf(buf, sizeof buf, "inv:%.17g", p_);
            return buf;
        }
        case Kind::Custom: fail(Errc::capability, "modulation: custom map has no token form");
    }
    return "?";
}

double Modulation::operator()(double x) const {
    switch (kind_) {
        case Kind::Zero: return 0.0;
        case Kind::One: return 1.0;
        case Kind::NegOne: return -1.0;
        case Kind::InvPower:
            if (!(x > 0.0)) fail(Errc::singular, "modulation: inverse power of non-positive value");
            return std::pow(x, -p_);
        case Kind::Custom: return f_(x);
    }
    return 0.0;
}

GsoSpec preset(const std::string& name) {
    const auto inv1 = Modulation::inv_power(1.0);
    const auto invh = Modulation::inv_power(0.5);
    const auto one = Modulation::one();
    const auto zero = Modulation::zero();
    if (name == "adjacency") return {one, one, zero, zero, name};
    if (name == "combinatorial") return {one, one, one, one, name};
    if (name == "signless") return {one, one, Modulation::neg_one(), one, name};
    if (name == "random_walk") return {inv1, one, inv1, one, name};
    if (name == "right_normalized") return {one, inv1, inv1, one, name};
    if (name == "sym_norm_adjacency") return {invh, invh, zero, zero, name};
    if (name == "sym_norm_laplacian") return {invh, invh, inv1, one, name};
    if (name == "eq8") return {invh, invh, invh, invh, name};
    fail(Errc::invalid, "unknown preset '" + name + "'");
}

std::vector<std::string> preset_names() {
    return {"adjacency",       "combinatorial",      "signless",           "random_walk",
            "right_normalized", "sym_norm_adjacency", "sym_norm_laplacian", "eq8"};
}

std::string GsoSpec::to_json() const {
    nlohmann::json j;
    j["m1"] = m1.token();
    j["m2"] = m2.token();
    j["m3"] = m3.token();
    j["m4"] = m4.token();
    if (!preset.empty()) j["preset"] = preset;
    return j.dump();
}

GsoSpec GsoSpec::from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const std::exception& e) {
        fail(Errc::invalid, std::string("gso spec json: ") + e.what());
    }
    if (j.contains("preset")) return nugg::preset(j["preset"].get<std::string>());
    GsoSpec s{Modulation::parse(j.at("m1").get<std::string>()),
              Modulation::parse(j.at("m2").get<std::string>()),
              Modulation::parse(j.at("m3").get<std::string>()),
              Modulation::parse(j.at("m4").get<std::string>()), ""};
    return s;
}

namespace {

void check_adjacency(const DenseMatrix& a) {
    const int n = a.n;
    for (int i = 0; i < n; ++i) {
        if (a.at(i, i) != 0.0) fail(Errc::invalid, "adjacency: diagonal must be zero");
        for (int j = i + 1; j < n; ++j) {
            if (a.at(i, j) != a.at(j, i)) fail(Errc::invalid, "adjacency: matrix must be symmetric");
            if (a.at(i, j) < 0.0) fail(Errc::invalid, "adjacency: entries must be non-negative");
        }
    }
}

void check_rho(std::span<const double> rho, int n) {
    if (static_cast<int>(rho.size()) != n) fail(Errc::invalid, "rho: length mismatch");
    for (double r : rho)
        if (!(r > 0.0)) fail(Errc::domain, "rho: entries must be strictly positive");
}

bool any_inverse(const GsoSpec& s) {
    return s.m1.needs_positive_argument() || s.m2.needs_positive_argument() ||
           s.m3.needs_positive_argument() || s.m4.needs_positive_argument();
}

}  // namespace

DenseMatrix build_gso(const DenseMatrix& adjacency, std::span<const double> rho,
                      const GsoSpec& spec) {
    const int n = adjacency.n;
    check_adjacency(adjacency);
    check_rho(rho, n);

    // w = N^-1 A_rho 1, the corrected-degree vector every modulation sees
    std::vector<double> w(n, 0.0);
    for (int i = 0; i < n; ++i) {
        double s = 0.0;
        for (int j = 0; j < n; ++j) s += adjacency.at(i, j) / rho[j];
        w[i] = s / n;
    }
    if (any_inverse(spec)) {
        for (int i = 0; i < n; ++i)
            if (!(w[i] > 0.0))
                fail(Errc::singular,
                     "build_gso: node " + std::to_string(i) + " is isolated under inverse modulation");
    }

    std::vector<double> d1(n), d2(n), d3(n), d4(n);
    for (int i = 0; i < n; ++i) {
        d1[i] = spec.m1(w[i]);
        d2[i] = spec.m2(w[i]);
        d3[i] = spec.m3(w[i]);
        d4[i] = spec.m4(w[i]);
    }

    DenseMatrix L(n);
    const double inv_n = 1.0 / n;
    for (int i = 0; i < n; ++i) {
        double diag = 0.0;
        for (int j = 0; j < n; ++j) {
            const double a_rho = adjacency.at(i, j) / rho[j];
            if (a_rho != 0.0) L.at(i, j) = inv_n * d1[i] * a_rho * d2[j];
            diag += d3[i] * a_rho * d4[j];
        }
        L.at(i, i) -= inv_n * diag;
    }
    return L;
}

std::vector<double> apply_gso(const std::vector<std::vector<int>>& adjacency,
                              std::span<const double> rho, const GsoSpec& spec,
                              std::span<const double> u) {
    const long n = static_cast<long>(adjacency.size());
    check_rho(rho, static_cast<int>(n));
    if (static_cast<long>(u.size()) != n) fail(Errc::invalid, "apply_gso: signal length mismatch");

    std::vector<double> w(n, 0.0);
    for (long i = 0; i < n; ++i) {
        double s = 0.0;
        for (int j : adjacency[i]) s += 1.0 / rho[j];
        w[i] = s / static_cast<double>(n);
    }
    if (any_inverse(spec)) {
        for (long i = 0; i < n; ++i)
            if (!(w[i] > 0.0))
                fail(Errc::singular,
                     "apply_gso: node " + std::to_string(i) + " is isolated under inverse modulation");
    }
    std::vector<double> out(n, 0.0);
    const double inv_n = 1.0 / static_cast<double>(n);
    for (long i = 0; i < n; ++i) {
        double acc = 0.0, diag = 0.0;
        const double d1 = spec.m1(w[i]), d3 = spec.m3(w[i]);
        for (int j : adjacency[i]) {
            const double a_rho = 1.0 / rho[j];
            acc += a_rho * spec.m2(w[j]) * u[j];
            diag += a_rho * spec.m4(w[j]);
        }
        out[i] = inv_n * (d1 * acc - d3 * diag * u[i]);
    }
    return out;
}

DenseMatrix canonical_scale(const DenseMatrix& L, const std::string& preset_name, int N) {
    double factor = 0.0;
    if (preset_name == "adjacency" || preset_name == "signless")
        factor = static_cast<double>(N);
    else if (preset_name == "combinatorial")
        factor = -static_cast<double>(N);
    else if (preset_name == "random_walk" || preset_name == "right_normalized" ||
             preset_name == "sym_norm_laplacian")
        factor = -1.0;
    else if (preset_name == "sym_norm_adjacency" || preset_name == "eq8")
        factor = 1.0;
    else
        fail(Errc::invalid, "canonical_scale: no canonical map for '" + preset_name + "'");
    DenseMatrix out = L;
    for (double& v : out.a) v *= factor;
    return out;
}

namespace {

// Householder reduction to tridiagonal form (eigenvalues only) followed by
// implicit-shift QL. Classic tred2/tqli, vector accumulation dropped.
void tridiagonalize(std::vector<double>& a, int n, std::vector<double>& d, std::vector<double>& e) {
    auto at = [&](int i, int j) -> double& { return a[static_cast<std::size_t>(i) * n + j]; };
    d.assign(n, 0.0);
    e.assign(n, 0.0);
    for (int i = n - 1; i >= 1; --i) {
        const int l = i - 1;
        double h = 0.0, scale = 0.0;
        if (l > 0) {
            for (int k = 0; k <= l; ++k) scale += std::abs(at(i, k));
            if (scale == 0.0) {
                e[i] = at(i, l);
            } else {
                for (int k = 0; k <= l; ++k) {
                    at(i, k) /= scale;
                    h += at(i, k) * at(i, k);
                }
                double f = at(i, l);
                double g = f >= 0.0 ? -std::sqrt(h) : std::sqrt(h);
                e[i] = scale * g;
                h -= f * g;
                at(i, l) = f - g;
                f = 0.0;
                for (int j = 0; j <= l; ++j) {
                    g = 0.0;
                    for (int k = 0; k <= j; ++k) g += at(j, k) * at(i, k);
                    for (int k = j + 1; k <= l; ++k) g += at(k, j) * at(i, k);
                    e[j] = g / h;
                    f += e[j] * at(i, j);
                }
                const double hh = f / (h + h);
                for (int j = 0; j <= l; ++j) {
                    f = at(i, j);
                    e[j] = g = e[j] - hh * f;
                    for (int k = 0; k <= j; ++k) at(j, k) -= f * e[k] + g * at(i, k);
                }
            }
        } else {
            e[i] = at(i, l);
        }
        d[i] = h;
    }
    e[0] = 0.0;
    for (int i = 0; i < n; ++i) d[i] = at(i, i);
}

void ql_implicit(std::vector<double>& d, std::vector<double>& e, int n) {
    auto sign = [](double a, double b) { return b >= 0.0 ? std::abs(a) : -std::abs(a); };
    for (int i = 1; i < n; ++i) e[i - 1] = e[i];
    e[n - 1] = 0.0;
    for (int l = 0; l < n; ++l) {
        int iter = 0;
        int m;
        do {
            for (m = l; m < n - 1; ++m) {
                const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
                if (std::abs(e[m]) <= std::numeric_limits<double>::epsilon() * dd) break;
            }
            if (m != l) {
                if (++iter == 50) fail(Errc::numeric, "eigensolver: QL failed to converge");
                double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
                double r = std::hypot(g, 1.0);
                g = d[m] - d[l] + e[l] / (g + sign(r, g));
                double s = 1.0, c = 1.0, p = 0.0;
                for (int i = m - 1; i >= l; --i) {
                    double f = s * e[i];
                    const double b = c * e[i];
                    r = std::hypot(f, g);
                    e[i + 1] = r;
                    if (r == 0.0) {
                        d[i + 1] -= p;
                        e[m] = 0.0;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = d[i + 1] - p;
                    r = (d[i] - g) * s + 2.0 * c * b;
                    p = s * r;
                    d[i + 1] = g + p;
                    g = c * r - b;
                }
                if (r == 0.0 && m - 1 >= l) continue;
                d[l] -= p;
                e[l] = g;
                e[m] = 0.0;
            }
        } while (m != l);
    }
}

std::vector<double> matvec(const DenseMatrix& m, std::span<const double> v) {
    std::vector<double> out(m.n, 0.0);
    for (int i = 0; i < m.n; ++i) {
        double s = 0.0;
        for (int j = 0; j < m.n; ++j) s += m.at(i, j) * v[j];
        out[i] = s;
    }
    return out;
}

double norm2(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

// dominant eigenvalue of the squared operator => |lambda|_max of m
double power_radius(const DenseMatrix& m) {
    const int n = m.n;
    Rng rng(0x5eed5eedULL);
    std::vector<double> v(n);
    for (auto& x : v) x = rng.uniform(-1.0, 1.0);
    double nv = norm2(v);
    for (auto& x : v) x /= nv;
    double mu = 0.0;
    for (int it = 0; it < 10000; ++it) {
        auto w1 = matvec(m, v);
        auto w2 = matvec(m, w1);
        mu = 0.0;
        for (int i = 0; i < n; ++i) mu += v[i] * w2[i];
        double res = 0.0;
        for (int i = 0; i < n; ++i) {
            const double r = w2[i] - mu * v[i];
            res += r * r;
        }
        const double scale = std::max(1.0, std::abs(mu));
        if (std::sqrt(res) <= 1e-10 * scale) return std::sqrt(std::max(mu, 0.0));
        const double nw = norm2(w2);
        if (nw == 0.0) return 0.0;  // nilpotent action on v; symmetric => zero matrix section
        for (int i = 0; i < n; ++i) v[i] = w2[i] / nw;
    }
    fail(Errc::numeric, "power iteration: residual tolerance not reached");
}

void check_symmetric(const DenseMatrix& m) {
    for (int i = 0; i < m.n; ++i)
        for (int j = i + 1; j < m.n; ++j)
            if (std::abs(m.at(i, j) - m.at(j, i)) > 1e-12 * std::max(1.0, std::abs(m.at(i, j))))
                fail(Errc::invalid, "matrix must be symmetric");
}

}  // namespace

std::vector<double> symmetric_eigenvalues(const DenseMatrix& m) {
    check_symmetric(m);
    const int n = m.n;
    if (n == 0) return {};
    std::vector<double> a = m.a, d, e;
    tridiagonalize(a, n, d, e);
    ql_implicit(d, e, n);
    std::sort(d.begin(), d.end());
    return d;
}

double spectral_radius(const DenseMatrix& m) {
    check_symmetric(m);
    if (m.n == 0) return 0.0;
    if (m.n <= 512) {
        const auto ev = symmetric_eigenvalues(m);
        return std::max(std::abs(ev.front()), std::abs(ev.back()));
    }
    return power_radius(m);
}

std::pair<double, double> extreme_eigenvalues(const DenseMatrix& m) {
    check_symmetric(m);
    if (m.n == 0) return {0.0, 0.0};
    if (m.n <= 512) {
        const auto ev = symmetric_eigenvalues(m);
        return {ev.front(), ev.back()};
    }
    // shift by just over the radius so one end of the spectrum dominates
    const double r = power_radius(m);
    if (r == 0.0) return {0.0, 0.0};
    const double shift = 1.001 * r;
    auto shifted_radius = [&](double s) {
        DenseMatrix t = m;
        for (int i = 0; i < m.n; ++i) t.at(i, i) += s;
        return power_radius(t);
    };
    const double lmax = shifted_radius(shift) - shift;   // spectrum of m + sI is positive
    const double lmin = shift - shifted_radius(-shift);  // spectrum of m - sI is negative
    return {lmin, lmax};
}

std::vector<std::pair<double, int>> bipartite_spectrum(int n, int m) {
    if (n < 1 || m < 1) fail(Errc::invalid, "bipartite_spectrum: parts must be >= 1");
    std::vector<std::pair<double, int>> spec;
    spec.emplace_back(0.0, 1);
    if (n > 1) spec.emplace_back(-std::sqrt(static_cast<double>(m) / n), n - 1);
    if (m > 1) spec.emplace_back(-std::sqrt(static_cast<double>(n) / m), m - 1);
    spec.emplace_back(-(static_cast<double>(m) + n) / std::sqrt(static_cast<double>(m) * n), 1);
    return spec;
}

DiagCommuteReport diag_commute_check(const DenseMatrix& A, std::span<const double> v, double tol) {
    check_symmetric(A);
    const int n = A.n;
    if (static_cast<int>(v.size()) != n) fail(Errc::invalid, "diag_commute_check: length mismatch");

    // (V A) 1 summed entrywise, A 1 summed then scaled, and (A V) 1: three
    // independently accumulated routes
    std::vector<double> row_sum(n, 0.0), va1(n, 0.0), av1(n, 0.0);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            row_sum[i] += A.at(i, j);
            va1[i] += v[i] * A.at(i, j);
            av1[i] += A.at(i, j) * v[j];
        }
    }
    DiagCommuteReport rep{true, true, true};
    for (int i = 0; i < n; ++i) {
        if (std::abs(va1[i] - v[i] * row_sum[i]) > tol) rep.identity1_holds = false;
        if (std::abs(av1[i] - va1[i]) > tol) rep.identity2_holds = false;
    }
    for (int i = 0; i < n && rep.iff_condition_holds; ++i)
        for (int j = 0; j < n; ++j)
            if (A.at(i, j) != 0.0 && v[i] != v[j]) {
                rep.iff_condition_holds = false;
                break;
            }
    return rep;
}

}  // namespace nugg
