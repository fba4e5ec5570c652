#pragma once

#include <Eigen/Core>
#include <functional>

namespace dskg::quadrature {

// Nodes and weights of a quadrature rule on some interval [a, b].
struct QuadRule {
    Eigen::ArrayXd nodes;
    Eigen::ArrayXd weights;
};

// n-point Gauss-Legendre rule mapped to [a, b]. The rule is open: nodes stay
// strictly inside the interval, so integrands may be singular at the ends as
// long as the singularity is integrable and sampled values stay finite.
// Computed on the fly by Newton iteration on the Legendre recurrence;
// bit-for-bit deterministic across calls.
QuadRule gauss_legendre(int n, double a = -1.0, double b = 1.0);

// Apply a rule to a function.
template <typename F>
double apply(const QuadRule& rule, F&& f) {
    double acc = 0.0;
    for (Eigen::Index i = 0; i < rule.nodes.size(); ++i)
        acc += rule.weights[i] * f(rule.nodes[i]);
    return acc;
}

// Adaptive double-exponential (tanh-sinh) integration of f over [a, b].
// Handles integrable endpoint singularities. Levels double the node density
// until two successive estimates agree to tol; throws QuadratureFailure if
// max_level refinements are not enough.
//
// Accuracy note: abscissae are plain doubles, so the distance to a nonzero
// endpoint cannot drop below about ulp(endpoint). For an inverse-square-root
// singularity at such an endpoint the achievable absolute accuracy is
// therefore ~1e-8, not tol. Singularities at 0 do not suffer from this (the
// nodes get exponentially close), and a change of variables that removes the
// singularity restores full accuracy.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double tol = 1e-10, int max_level = 12);

// Adaptive bisection with a Gauss-Legendre 12/24 error estimate per panel.
// Converges on integrands with interior derivative kinks (moduli of
// oscillatory functions crossing zero), which defeat the global tanh-sinh
// rule; endpoint singularities are NOT handled - substitute them away first.
// The error budget tol*(1 + |estimate|) is distributed over panels by
// length; panels that cannot meet their share within max_depth bisections
// raise QuadratureFailure.
double integrate_bisect(const std::function<double(double)>& f, double a,
                        double b, double tol = 1e-10, int max_depth = 48);

}  // namespace dskg::quadrature
