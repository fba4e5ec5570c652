#pragma once

#include <Eigen/Core>
#include <complex>

namespace dskg::kernels {

// Where the mass parameter sits relative to the curved-space thresholds.
// The split value M^2 = n^2/4 - m^2 changes sign at m = n/2; half-integer
// real M values mark degenerate spots of the kernel's hypergeometric factor.
enum class MassRegime {
    SmallMass,   // 0 < m < n/2, M real positive (generic)
    Critical,    // M = 1/2: kernels collapse to elementary exponentials
    KnotPoint,   // M = k + 1/2 for integer k >= 1: terminating series
    ZeroCurved,  // m = n/2 exactly, M = 0
    LargeMass,   // m > n/2, M = -i mu purely imaginary
};

struct MassParams {
    double n = 0.0;   // spatial dimension of the underlying equation
    double m = 0.0;   // mass
    double M2 = 0.0;  // n^2/4 - m^2
    double mu = 0.0;  // sqrt(m^2 - n^2/4) when M2 < 0, else 0
    std::complex<double> M;  // sqrt(M2), continued as -i*mu for M2 < 0
    bool imaginary = false;  // true iff M2 < 0
    int sgn_M = 1;           // 0 iff M == 0, else 1 (controls log factors)
    MassRegime regime = MassRegime::SmallMass;
};

// Classify (n, m) and precompute the derived quantities above. Half-integer
// detection uses the given tolerance. Throws DomainError for m <= 0 or n < 1.
MassParams classify_mass(double n, double m, double tol = 1e-12);

// Source kernel E(r, t; 0, b): the weight attached to the base wave solution
// at emission time b and radius r, observed at time t > b. Real-valued in
// every regime; supported on |r| < e^{-b} - e^{-t} (arguments slightly
// outside are clamped to the boundary value's domain edge).
double kernel_E(double r, double t, double b, const MassParams& mp);

// Data kernels: K1 weights the velocity part, K0 the position part, both at
// b = 0. K0 is evaluated in a regrouped form that stays finite as z
// approaches 1 - e^{-t}, where the two raw terms individually blow up.
double kernel_K1(double z, double t, const MassParams& mp);
double kernel_K0(double z, double t, const MassParams& mp);

// Array versions mapping over radii (Eigen expressions welcome on input).
Eigen::ArrayXd kernel_E(const Eigen::Ref<const Eigen::ArrayXd>& r, double t,
                        double b, const MassParams& mp);
Eigen::ArrayXd kernel_K1(const Eigen::Ref<const Eigen::ArrayXd>& z, double t,
                         const MassParams& mp);
Eigen::ArrayXd kernel_K0(const Eigen::Ref<const Eigen::ArrayXd>& z, double t,
                         const MassParams& mp);

}  // namespace dskg::kernels
