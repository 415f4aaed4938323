#pragma once

#include "density.hpp"
#include "geometry.hpp"

namespace nugg {

enum class ProbMethod { ClosedForm, Quadrature };

// Sampling probability of the metric ball of radius alpha about center.
//
// ClosedForm support:
//   circle      exact cosine-series formula (series densities only)
//   disk        semi-ellipse approximation of the radial integrals
//   hyperbolic  exponential tail approximation, any angular density
// Quadrature integrates the density numerically on every space and is the
// reference the approximations are tested against.
double ball_probability(const LatentSpace& space, const AngularDensity& density,
                        const Point& center, double alpha, ProbMethod method);

// N * ball probability; the hyperbolic closed form evaluates the exponential
// approximation of the node degree directly.
double expected_degree(const LatentSpace& space, const AngularDensity& density, const Point& p,
                       double alpha, double N, ProbMethod method);

// Closed-form expected mean degree of the whole graph (circle exact,
// disk/hyperbolic approximations; series densities only).
double expected_average_degree(const LatentSpace& space, const AngularDensity& density,
                               double alpha, double N);

}  // namespace nugg
