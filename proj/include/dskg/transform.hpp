#pragma once

#include <Eigen/Core>
#include <functional>
#include <vector>

#include "dskg/field.hpp"
#include "dskg/kernels.hpp"
#include "dskg/wave.hpp"

namespace dskg::transform {

// Node counts for the transform integrals: n_s for the one-dimensional
// data integral, n_b x n_r for the (emission time, radius) double integral
// of the source representation. Gauss-Legendre everywhere, so endpoints
// (where the kernels have removable singularities) are never sampled.
// endpoint_pad shrinks each integration interval by that relative amount on
// both sides. With self_check set, every solve is repeated at doubled node
// counts and QuadratureUnderResolved is thrown if any output moves by more
// than 1e-6 relative.
struct QuadratureSpec {
    int n_s = 64;
    int n_b = 48;
    int n_r = 48;
    double endpoint_pad = 0.0;
    bool self_check = false;
};

// count output times on [0, T], equally spaced in 1 - e^{-t} so that late
// times stay represented after the time compactification.
std::vector<double> default_times(double T, int count);

// Spatial samples of the source at emission time b.
using SourceFn = std::function<Eigen::ArrayXd(double)>;

// Propagate Cauchy data (psi0, psi1) for
//   psi_tt + n psi_t - e^{-2t} A psi + m^2 psi = 0
// by weighting base wave solutions with the data kernels. `base` fixes the
// operator A, grid, and geometry; its data is replaced internally.
Trajectory solve_linear_cauchy(const Eigen::Ref<const Eigen::ArrayXd>& psi0,
                               const Eigen::Ref<const Eigen::ArrayXd>& psi1,
                               const kernels::MassParams& mp,
                               const wave::WaveSolver& base,
                               const std::vector<double>& times,
                               const QuadratureSpec& q = {});

// Zero-data problem driven by the source f: the double integral of base wave
// solutions (emitted at time b with velocity data f(., b)) against the
// source kernel.
Trajectory solve_source(const SourceFn& f, const kernels::MassParams& mp,
                        const wave::WaveSolver& base,
                        const std::vector<double>& times,
                        const QuadratureSpec& q = {});

// The companion first-order-mass form
//   u_tt - e^{-2t} A u - M^2 u = f,   u(0) = u0,   u_t(0) = u1,
// handled through the substitution u = e^{nt/2} psi (single code path).
// Pass an empty SourceFn for the homogeneous problem.
Trajectory solve_u_form(const Eigen::Ref<const Eigen::ArrayXd>& u0,
                        const Eigen::Ref<const Eigen::ArrayXd>& u1,
                        const kernels::MassParams& mp,
                        const wave::WaveSolver& base,
                        const std::vector<double>& times,
                        const QuadratureSpec& q = {},
                        const SourceFn& f = {});

// Oracle-free correctness check: centered-difference residual of
//   psi_tt + n psi_t - e^{-2t} A psi + m^2 psi - f
// in the grid max norm, one value per interior time. Requires at least 5
// uniformly spaced times. Pass an empty SourceFn for f = 0.
Eigen::ArrayXd pde_residual(const Trajectory& traj, const SourceFn& f,
                            const wave::WaveSolver& base);

}  // namespace dskg::transform
