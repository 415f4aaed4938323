#pragma once

#include <functional>
#include <span>
#include <vector>

namespace nugg {

// Adaptive Gauss-Kronrod (G7/K15) integration of f over [a, b] to the given
// absolute tolerance. Throws Errc::numeric if the interval budget is exhausted
// before the tolerance is met.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol = 1e-10, int max_intervals = 4000);

// Same, with the interval pre-split at the given breakpoints (kinks or jump
// discontinuities of f). Breakpoints outside (a, b) are ignored.
double integrate_split(const std::function<double(double)>& f, double a, double b,
                       std::span<const double> breakpoints, double abs_tol = 1e-10,
                       int max_intervals = 4000);

// Radial integral of f over [lo, hi] inside the ball slice [c - w, c + w],
// substituting r = c - w cos t. The angular sweep of a metric ball vanishes
// like a square root at the slice ends; the substitution makes the integrand
// smooth there.
double integrate_ball_slice(const std::function<double(double)>& f, double c, double w, double lo,
                            double hi, std::span<const double> breakpoints, double abs_tol = 1e-10);

// Modified Bessel function of the first kind, order zero. Power series for
// small arguments, asymptotic expansion beyond; relative error < 1e-13.
double bessel_i0(double x);

// Chebyshev polynomial of the second kind U_k(x) by the three-term recurrence.
// x is clamped to [-1, 1].
double chebyshev_u(int k, double x);

double mean(std::span<const double> v);
double median(std::vector<double> v);  // by value: sorts a copy

// Least-squares slope of y against x.
double fit_slope(std::span<const double> x, std::span<const double> y);

double pearson(std::span<const double> x, std::span<const double> y);

// Spearman rank correlation (average ranks on ties).
double spearman(std::span<const double> x, std::span<const double> y);

}  // namespace nugg
