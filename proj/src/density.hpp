#pragma once

#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "geometry.hpp"
#include "rng.hpp"

namespace nugg {

// One oscillating component a * cos(n (theta - mu)), n >= 1. Every angular
// density here is dc + sum of harmonics with dc = 1/(2 pi) after
// normalization, which is what the closed-form ball probabilities consume.
struct Harmonic {
    double amp;
    int n;
    double mu;
};

// Shifted-cosine-series probability density on angles:
//   (sum_i c_i cos(n_i (theta - mu_i)) + A) / B,
// with A = sum |c_i| and B = 2 pi (sum |c_i| + sum_{n_i = 0} c_i).
class SpectrallyBounded {
public:
    SpectrallyBounded(std::vector<double> c, std::vector<int> n, std::vector<double> mu);

    // Series dc + sum_j amp_j cos(n_j (theta - mu_j)) rescaled to integrate
    // to 1. Unlike the parameter-set constructor this admits signed series
    // that dip below zero (the von Mises surrogates do).
    static SpectrallyBounded from_series(double dc, std::vector<Harmonic> harmonics);

    double operator()(double theta) const;

    double A() const { return A_; }
    double B() const { return B_; }
    std::span<const double> c() const { return c_; }
    std::span<const int> n() const { return n_; }
    std::span<const double> mu() const { return mu_; }

    // oscillating components (n >= 1); the constant component is 1/(2 pi)
    std::span<const Harmonic> harmonics() const { return harmonics_; }

    // exact integral over [a, b]
    double integrate(double a, double b) const;

private:
    SpectrallyBounded() = default;
    void validate_nonnegative() const;

    std::vector<double> c_;
    std::vector<int> n_;
    std::vector<double> mu_;
    double A_ = 0.0, B_ = 1.0;
    std::vector<Harmonic> harmonics_;
};

// Mixture-style exponential-cosine density normalized through I0 terms:
//   (1/B) sum_i c_i exp(kappa_i cos(n_i (theta - mu_i))) / (2 pi I0(kappa_i)) + A / B.
class MultimodalVonMises {
public:
    MultimodalVonMises(std::vector<double> c, std::vector<int> n, std::vector<double> mu,
                       std::vector<double> kappa);

    double operator()(double theta) const;

    double A() const { return A_; }
    double B() const { return B_; }
    std::span<const double> c() const { return c_; }
    std::span<const int> n() const { return n_; }
    std::span<const double> mu() const { return mu_; }
    std::span<const double> kappa() const { return kappa_; }

private:
    std::vector<double> c_, mu_, kappa_;
    std::vector<int> n_;
    std::vector<double> i0_;  // I0(kappa_i), cached
    double A_ = 0.0, B_ = 1.0;
};

// Cosine-series surrogate of a von Mises mixture. Each exponential factor is
// replaced by 1 + (cosh k - 1) cos^p + sinh k cos^q, where {p, q} = {2, 1}
// for k <= 1 and {k, k - 1} (even/odd split, k rounded to an integer) above;
// powers of cosines are expanded binomially into plain cosines and the result
// is renormalized to integrate to 1.
SpectrallyBounded mvm_to_sbrv(const MultimodalVonMises& d);

// Angular sampling density: either representation behind one interface.
class AngularDensity {
public:
    AngularDensity(SpectrallyBounded d);    // NOLINT(google-explicit-constructor)
    AngularDensity(MultimodalVonMises d);   // NOLINT(google-explicit-constructor)

    static AngularDensity uniform();

    double operator()(double theta) const;

    bool is_sbrv() const { return std::holds_alternative<SpectrallyBounded>(impl_); }
    const SpectrallyBounded* sbrv() const { return std::get_if<SpectrallyBounded>(&impl_); }
    const MultimodalVonMises* mvm() const { return std::get_if<MultimodalVonMises>(&impl_); }

    // upper bound of the density used as rejection envelope
    double envelope() const { return envelope_; }

    std::string to_json() const;
    static AngularDensity from_json(const std::string& text);

private:
    std::variant<SpectrallyBounded, MultimodalVonMises> impl_;
    double envelope_ = 0.0;
};

// i.i.d. angles from the density by rejection sampling against a flat
// envelope (grid max with 0.1% headroom).
std::vector<double> sample_angle(const AngularDensity& d, Rng& rng, long count);

// Radial component of the uniform law of a space (the density varies only in
// the angle). Inverse-CDF sampling.
struct RadialLaw {
    SpaceKind kind;
    double R;

    static RadialLaw of(const LatentSpace& space) { return {space.kind, space.R}; }
    double pdf(double r) const;
    double inverse_cdf(double u) const;
};

std::vector<double> sample_radius(const RadialLaw& law, Rng& rng, long count);

// Sampling density relative to the normalized reference measure of the
// space. The radial factor of the uniform law cancels against the area
// jacobian, leaving 2 pi times the angular pdf for every supported space.
double rho_true(const AngularDensity& d, const Point& p);

}  // namespace nugg
