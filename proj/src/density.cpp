#include "density.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include <json.hpp>

#include "error.hpp"
#include "numeric.hpp"

namespace nugg {

namespace {

constexpr int kValidationGrid = 2048;
constexpr double kNegTol = -1e-9;

template <class F>
double grid_max(const F& f, int points = 4096) {
    double m = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < points; ++i) {
        const double theta = -M_PI + 2.0 * M_PI * (static_cast<double>(i) + 0.5) / points;
        m = std::max(m, f(theta));
    }
    return m;
}

template <class F>
void check_nonnegative_on_grid(const F& f, const char* what) {
    for (int i = 0; i <= kValidationGrid; ++i) {
        const double theta = -M_PI + 2.0 * M_PI * i / kValidationGrid;
        if (!(f(theta) >= kNegTol)) fail(Errc::domain, std::string(what) + ": density dips below zero");
    }
}

}  // namespace

SpectrallyBounded::SpectrallyBounded(std::vector<double> c, std::vector<int> n,
                                     std::vector<double> mu)
    : c_(std::move(c)), n_(std::move(n)), mu_(std::move(mu)) {
    if (c_.empty() || c_.size() != n_.size() || c_.size() != mu_.size())
        fail(Errc::invalid, "cosine series: c, n, mu must have equal nonzero length");
    double abs_sum = 0.0, zero_freq_sum = 0.0;
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (n_[i] < 0) fail(Errc::invalid, "cosine series: frequencies must be non-negative");
        abs_sum += std::abs(c_[i]);
        if (n_[i] == 0) zero_freq_sum += c_[i];
    }
    A_ = abs_sum;
    B_ = 2.0 * M_PI * (abs_sum + zero_freq_sum);
    if (B_ == 0.0) fail(Errc::invalid, "cosine series: normalization constant is zero");
    for (std::size_t i = 0; i < c_.size(); ++i)
        if (n_[i] >= 1 && c_[i] != 0.0) harmonics_.push_back({c_[i] / B_, n_[i], mu_[i]});
    validate_nonnegative();
}

SpectrallyBounded SpectrallyBounded::from_series(double dc, std::vector<Harmonic> harmonics) {
    if (!(dc > 0.0)) fail(Errc::domain, "cosine series: constant component must be positive");
    const double scale = 1.0 / (2.0 * M_PI * dc);
    SpectrallyBounded out;
    out.A_ = 1.0 / (2.0 * M_PI);
    out.B_ = 1.0;
    for (auto& h : harmonics) {
        if (h.n < 1) fail(Errc::invalid, "cosine series: harmonic frequency must be >= 1");
        h.amp *= scale;
        if (h.amp != 0.0) {
            out.harmonics_.push_back(h);
            out.c_.push_back(h.amp);
            out.n_.push_back(h.n);
            out.mu_.push_back(h.mu);
        }
    }
    if (out.c_.empty()) {  // uniform
        out.c_.push_back(0.0);
        out.n_.push_back(1);
        out.mu_.push_back(0.0);
    }
    // no pointwise sign check here: surrogate series of peaked mixtures dip
    // below zero even though they integrate to one
    return out;
}

void SpectrallyBounded::validate_nonnegative() const {
    check_nonnegative_on_grid([this](double t) { return (*this)(t); }, "cosine series");
}

double SpectrallyBounded::operator()(double theta) const {
    double s = A_;
    for (std::size_t i = 0; i < c_.size(); ++i) s += c_[i] * std::cos(n_[i] * (theta - mu_[i]));
    return s / B_;
}

double SpectrallyBounded::integrate(double a, double b) const {
    double s = (b - a) / (2.0 * M_PI);
    for (const auto& h : harmonics_)
        s += h.amp / h.n * (std::sin(h.n * (b - h.mu)) - std::sin(h.n * (a - h.mu)));
    return s;
}

MultimodalVonMises::MultimodalVonMises(std::vector<double> c, std::vector<int> n,
                                       std::vector<double> mu, std::vector<double> kappa)
    : c_(std::move(c)), mu_(std::move(mu)), kappa_(std::move(kappa)), n_(std::move(n)) {
    if (c_.empty() || c_.size() != n_.size() || c_.size() != mu_.size() ||
        c_.size() != kappa_.size())
        fail(Errc::invalid, "von Mises mixture: c, n, mu, kappa must have equal nonzero length");
    i0_.resize(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (n_[i] < 0) fail(Errc::invalid, "von Mises mixture: frequencies must be non-negative");
        if (!(kappa_[i] >= 0.0)) fail(Errc::domain, "von Mises mixture: kappa must be >= 0");
        i0_[i] = bessel_i0(kappa_[i]);
    }
    A_ = 0.0;
    B_ = 0.0;
    for (std::size_t i = 0; i < c_.size(); ++i) {
        const double peak = std::exp(kappa_[i]) / i0_[i];
        if (c_[i] < 0.0) {
            A_ += c_[i] * peak / (2.0 * M_PI);
            B_ += c_[i] * peak;
        }
        if (n_[i] >= 1)
            B_ += c_[i];
        else
            B_ += c_[i] * peak;
    }
    if (B_ == 0.0) fail(Errc::invalid, "von Mises mixture: normalization constant is zero");
    check_nonnegative_on_grid([this](double t) { return (*this)(t); }, "von Mises mixture");
}

double MultimodalVonMises::operator()(double theta) const {
    double s = A_;
    for (std::size_t i = 0; i < c_.size(); ++i)
        s += c_[i] * std::exp(kappa_[i] * std::cos(n_[i] * (theta - mu_[i]))) /
             (2.0 * M_PI * i0_[i]);
    return s / B_;
}

namespace {

// expand cos^m(x) into sum over frequencies j of coeff * cos(j x)
std::map<int, double> cosine_power(int m) {
    std::map<int, double> out;
    if (m == 0) {
        out[0] = 1.0;
        return out;
    }
    // binomial(m, k) / 2^m at frequency |2k - m|
    std::vector<double> binom(m + 1);
    binom[0] = 1.0;
    for (int k = 1; k <= m; ++k) binom[k] = binom[k - 1] * (m - k + 1) / k;
    const double scale = std::pow(0.5, m);
    for (int k = 0; k <= m; ++k) out[std::abs(2 * k - m)] += binom[k] * scale;
    return out;
}

}  // namespace

SpectrallyBounded mvm_to_sbrv(const MultimodalVonMises& d) {
    double dc = d.A();
    std::vector<Harmonic> harmonics;
    const auto c = d.c();
    const auto n = d.n();
    const auto mu = d.mu();
    const auto kappa = d.kappa();
    for (std::size_t i = 0; i < c.size(); ++i) {
        const double k = kappa[i];
        const double norm = c[i] / (2.0 * M_PI * bessel_i0(k));
        if (n[i] == 0) {
            // constant factor, no approximation involved
            dc += norm * std::exp(k);
            continue;
        }
        int p_cosh = 2, p_sinh = 1;
        if (k > 1.0) {
            const int kr = std::max(2, static_cast<int>(std::lround(k)));
            if (kr % 2 == 0) {
                p_cosh = kr;
                p_sinh = kr - 1;
            } else {
                p_cosh = kr - 1;
                p_sinh = kr;
            }
        }
        std::map<int, double> series;  // frequency multiple -> coefficient
        series[0] += 1.0;
        for (const auto& [freq, coeff] : cosine_power(p_cosh)) series[freq] += (std::cosh(k) - 1.0) * coeff;
        for (const auto& [freq, coeff] : cosine_power(p_sinh)) series[freq] += std::sinh(k) * coeff;
        for (const auto& [freq, coeff] : series) {
            if (freq == 0)
                dc += norm * coeff;
            else
                harmonics.push_back({norm * coeff, freq * n[i], mu[i]});
        }
    }
    for (auto& h : harmonics) h.amp /= d.B();
    return SpectrallyBounded::from_series(dc / d.B(), std::move(harmonics));
}

AngularDensity::AngularDensity(SpectrallyBounded d) : impl_(std::move(d)) {
    envelope_ = grid_max([this](double t) { return (*this)(t); });
}

AngularDensity::AngularDensity(MultimodalVonMises d) : impl_(std::move(d)) {
    envelope_ = grid_max([this](double t) { return (*this)(t); });
}

AngularDensity AngularDensity::uniform() {
    return AngularDensity(SpectrallyBounded({1.0}, {0}, {0.0}));
}

double AngularDensity::operator()(double theta) const {
    return std::visit([&](const auto& d) { return d(theta); }, impl_);
}

std::string AngularDensity::to_json() const {
    nlohmann::json j;
    if (const auto* s = sbrv()) {
        j["type"] = "sbrv";
        j["c"] = std::vector<double>(s->c().begin(), s->c().end());
        j["n"] = std::vector<int>(s->n().begin(), s->n().end());
        j["mu"] = std::vector<double>(s->mu().begin(), s->mu().end());
    } else {
        const auto* m = mvm();
        j["type"] = "mvm";
        j["c"] = std::vector<double>(m->c().begin(), m->c().end());
        j["n"] = std::vector<int>(m->n().begin(), m->n().end());
        j["mu"] = std::vector<double>(m->mu().begin(), m->mu().end());
        j["kappa"] = std::vector<double>(m->kappa().begin(), m->kappa().end());
    }
    return j.dump();
}

AngularDensity AngularDensity::from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const std::exception& e) {
        fail(Errc::invalid, std::string("density json: ") + e.what());
    }
    const std::string type = j.value("type", "");
    if (type == "uniform") return uniform();
    if (type != "sbrv" && type != "mvm") fail(Errc::invalid, "density json: unknown type '" + type + "'");
    try {
        auto c = j.at("c").get<std::vector<double>>();
        auto n = j.at("n").get<std::vector<int>>();
        auto mu = j.at("mu").get<std::vector<double>>();
        if (type == "sbrv") return AngularDensity(SpectrallyBounded(std::move(c), std::move(n), std::move(mu)));
        auto kappa = j.at("kappa").get<std::vector<double>>();
        return AngularDensity(
            MultimodalVonMises(std::move(c), std::move(n), std::move(mu), std::move(kappa)));
    } catch (const Error&) {
        throw;
    } catch (const std::exception& e) {
        fail(Errc::invalid, std::string("density json: ") + e.what());
    }
}

std::vector<double> sample_angle(const AngularDensity& d, Rng& rng, long count) {
    if (count < 0) fail(Errc::invalid, "sample_angle: negative count");
    const double envelope = d.envelope() * 1.001;
    if (!(envelope > 1e-300)) fail(Errc::domain, "sample_angle: degenerate density");
    std::vector<double> out;
    out.reserve(count);
    while (static_cast<long>(out.size()) < count) {
        const double theta = rng.uniform(-M_PI, M_PI);
        const double u = rng.uniform01();
        if (u * envelope <= d(theta)) out.push_back(theta);
    }
    return out;
}

double RadialLaw::pdf(double r) const {
    switch (kind) {
        case SpaceKind::UnitCircle: return 0.0;
        case SpaceKind::UnitDisk: return (r >= 0.0 && r < R) ? 2.0 * r / (R * R) : 0.0;
        case SpaceKind::Sphere2: return (r >= 0.0 && r < M_PI) ? 0.5 * std::sin(r) : 0.0;
        case SpaceKind::HyperbolicDisk:
            return (r >= 0.0 && r < R) ? std::sinh(r) / (std::cosh(R) - 1.0) : 0.0;
    }
    return 0.0;
}

double RadialLaw::inverse_cdf(double u) const {
    switch (kind) {
        case SpaceKind::UnitCircle: return 0.0;
        case SpaceKind::UnitDisk: return R * std::sqrt(u);
        case SpaceKind::Sphere2: return std::acos(std::clamp(1.0 - 2.0 * u, -1.0, 1.0));
        case SpaceKind::HyperbolicDisk: return std::acosh(1.0 + u * (std::cosh(R) - 1.0));
    }
    return 0.0;
}

std::vector<double> sample_radius(const RadialLaw& law, Rng& rng, long count) {
    if (count < 0) fail(Errc::invalid, "sample_radius: negative count");
    std::vector<double> out;
    out.reserve(count);
    for (long i = 0; i < count; ++i) out.push_back(law.inverse_cdf(rng.uniform01()));
    return out;
}

double rho_true(const AngularDensity& d, const Point& p) { return 2.0 * M_PI * d(p.theta); }

}  // namespace nugg
