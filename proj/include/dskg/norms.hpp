#pragma once

#include <Eigen/Core>
#include <limits>
#include <vector>

#include "dskg/field.hpp"

namespace dskg::norms {

// Which function-space norm to take. Sobolev(s) coincides with
// Besov(s, 2, 2) up to discrete-equivalence constants.
struct NormSpec {
    double s = 0.0;
    double p = 2.0;  // spatial integrability; infinity() for the sup norm
    double q = 2.0;  // summability across dyadic shells

    static NormSpec sobolev(double s) { return {s, 2.0, 2.0}; }
    static NormSpec besov(double s, double p, double q) { return {s, p, q}; }
    static constexpr double inf = std::numeric_limits<double>::infinity();
};

// Result of fitting a decay exponent to a norm history.
struct DecayFit {
    double t_a = 0.0, t_b = 0.0;  // window actually used
    double gamma = 0.0;           // exponential rate
    double beta = 0.0;            // coefficient of log(1+t), log-corrected fits
    double r_squared = 0.0;
    bool log_corrected = false;
    int samples = 0;
};

// H_(s) norm: ||(1+|xi|^2)^{s/2} u^|| with Parseval normalization, so grid
// norms converge to the continuum ones as the grid refines. Radial fields
// are measured through the odd extension of rho * u (a diagnostic exact up
// to the usual 4*pi solid-angle factor).
double sobolev_norm(const Field& u, double s);

// Littlewood-Paley block norm (sum_j (2^{js} ||block_j u||_p)^q)^{1/q} with
// a fixed smooth dyadic partition. Throws DomainError for s < 0 or p, q < 1.
double besov_norm(const Field& u, const NormSpec& spec);

// max_t e^{gamma t} ||psi(t)||_{H_(s)} over the trajectory samples.
double weighted_sup_norm(const Trajectory& traj, double gamma, double s);

// Least-squares decay exponent of -log(norm) over times in [t_a, t_b]:
// fits gamma*t + c, or gamma*t + beta*log(1+t) + c when log_corrected is
// set (for the regimes whose decay carries a (1+t) factor). Requires at
// least 8 samples in the window and positive norms there.
DecayFit fit_decay_rate(const std::vector<double>& times,
                        const std::vector<double>& norm_values, double t_a,
                        double t_b, bool log_corrected = false);

}  // namespace dskg::norms
