#pragma once

#include <complex>

namespace dskg::specfun {

using cplx = std::complex<double>;

// Branch-selection point between the direct series and the 1-z connection
// formulas. Both series converge comfortably here, which gives the tests an
// overlap band to compare the two routes.
inline constexpr double z_switch = 0.7;

// Iteration cap for all series.
inline constexpr long max_terms = 1000000;

struct HypParams {
    cplx a, b, c;
    double z;  // in [0, 1)
};

// Gamma and digamma for complex argument (Lanczos approximation plus
// asymptotic series; reflection for the left half plane).
cplx cgamma(cplx z);
cplx cdigamma(cplx z);

// Gauss hypergeometric function 2F1(a, b; c; z) for z in [0, 1).
// Relative accuracy target tol. Routes: exact terminating polynomial when a
// or b is a non-positive integer (snapped within 1e-12), direct series for
// z <= z_switch, and the 1-z connection formulas above it, including the
// logarithmic degenerate branch when c-a-b is an integer.
cplx gauss_2f1(cplx a, cplx b, cplx c, double z, double tol = 1e-12);
inline cplx gauss_2f1(const HypParams& p, double tol = 1e-12) {
    return gauss_2f1(p.a, p.b, p.c, p.z, tol);
}

// Same, with the complement 1-z supplied exactly by the caller. Use this when
// z was formed as 1 - (small quantity): it keeps the connection-formula
// argument and log(1-z) fully accurate for z near 1.
cplx gauss_2f1_c(cplx a, cplx b, cplx c, double z, double one_minus_z,
                 double tol = 1e-12);

// Limit value 2F1(a, b; c; 1) = Gamma(c)Gamma(c-a-b) / (Gamma(c-a)Gamma(c-b))
// (Gauss summation). Requires Re(c-a-b) > 0.
cplx gauss_2f1_at_one(cplx a, cplx b, cplx c);

// Cancellation-safe 2F1(p1) - 2F1(p2) for p1.z == p2.z: the two series are
// differenced term by term with compensated summation, so the result carries
// absolute error O(tol) even when the two values agree to many digits.
// Falls back to subtracting the connection-formula values above z_switch,
// where the two functions separate and the naive difference is safe.
cplx gauss_2f1_diff(const HypParams& p1, const HypParams& p2,
                    double tol = 1e-12);

// (2F1(p1) - 2F1(p2)) / z, the form the kernel bracket actually needs: the
// difference vanishes linearly in z, and dividing termwise keeps the ratio
// fully conditioned as z -> 0.
cplx gauss_2f1_diff_over_z(const HypParams& p1, const HypParams& p2,
                           double tol = 1e-12);

}  // namespace dskg::specfun
