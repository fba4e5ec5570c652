#include "dskg/kernels.hpp"

#include <cmath>

#include "dskg/errors.hpp"
#include "dskg/specfun.hpp"

namespace dskg::kernels {

using specfun::cplx;
using specfun::HypParams;

MassParams classify_mass(double n, double m, double tol) {
    if (!(m > 0.0)) throw DomainError("mass must be positive");
    if (!(n >= 1.0)) throw DomainError("spatial dimension must be at least 1");
    MassParams mp;
    mp.n = n;
    mp.m = m;
    mp.M2 = 0.25 * n * n - m * m;
    if (mp.M2 < 0.0) {
        mp.mu = std::sqrt(-mp.M2);
        mp.M = cplx(0.0, -mp.mu);
        mp.imaginary = true;
        mp.sgn_M = 1;
        mp.regime = MassRegime::LargeMass;
        return mp;
    }
    double Mr = std::sqrt(mp.M2);
    mp.M = Mr;
    mp.imaginary = false;
    mp.sgn_M = (mp.M2 == 0.0) ? 0 : 1;
    if (mp.M2 == 0.0) {
        mp.regime = MassRegime::ZeroCurved;
        return mp;
    }
    // half-integer real M: M = k + 1/2 with k >= 0
    double k = std::round(Mr - 0.5);
    if (k >= 0.0 && std::abs(Mr - 0.5 - k) <= tol) {
        mp.regime = (k == 0.0) ? MassRegime::Critical : MassRegime::KnotPoint;
        return mp;
    }
    mp.regime = MassRegime::SmallMass;
    return mp;
}

namespace {

// Interior of the kernel support: common geometric quantities at emission
// time b, observation time t, radius r. All kernels share
//   D = (e^{-b} + e^{-t})^2 - r^2,     w = ((e^{-b} - e^{-t})^2 - r^2) / D,
// and the exact complement 1 - w = 4 e^{-(b+t)} / D, which is what keeps the
// hypergeometric connection formulas fully accurate for large t.
struct Geometry {
    double D;
    double w;
    double one_minus_w;
};

Geometry geometry(double r, double t, double b) {
    double eb = std::exp(-b), et = std::exp(-t);
    double D = (eb + et) * (eb + et) - r * r;
    if (!(D > 0.0)) throw DomainError("kernel arguments outside domain");
    double omw = 4.0 * eb * et / D;
    double w = ((eb - et) * (eb - et) - r * r) / D;
    if (w < 0.0) {
        if (w < -1e-12) throw DomainError("kernel radius outside support");
        w = 0.0;
    }
    return {D, w, omw};
}

double take_real(cplx v, const char* what) {
    if (std::abs(v.imag()) > 1e-9 * (1.0 + std::abs(v.real())))
        throw NonConvergence(std::string(what) +
                             ": imaginary residue above tolerance");
    return v.real();
}

}  // namespace

double kernel_E(double r, double t, double b, const MassParams& mp) {
    Geometry g = geometry(r, t, b);
    cplx a = 0.5 - mp.M;
    cplx F = specfun::gauss_2f1_c(a, a, 1.0, g.w, g.one_minus_w);
    cplx val = std::pow(cplx(g.one_minus_w), -mp.M) * F / std::sqrt(g.D);
    return take_real(val, "kernel_E");
}

double kernel_K1(double z, double t, const MassParams& mp) {
    return kernel_E(z, t, 0.0, mp);
}

double kernel_K0(double z, double t, const MassParams& mp) {
    Geometry g = geometry(z, t, 0.0);
    double et = std::exp(-t);
    cplx a1 = 0.5 - mp.M;

    // Raw form: prefactor/(Q sqrt(D)) * [c1 F1 + c2 F2] with Q = w D. Since
    // c1 + c2 = -Q/2 identically, regrouping as
    //   c1 (F1 - F2)/Q - F2/2
    // cancels the 1/Q pole analytically; (F1 - F2)/w is summed termwise so
    // nothing is lost when z approaches the light cone edge w -> 0.
    cplx c1 = et - 1.0 + mp.M * (et * et - 1.0 - z * z);
    HypParams p1{a1, a1, 1.0, g.w};
    HypParams p2{a1 - 1.0, a1, 1.0, g.w};
    cplx diff_over_w = specfun::gauss_2f1_diff_over_z(p1, p2);
    cplx F2 = specfun::gauss_2f1_c(p2.a, p2.b, p2.c, g.w, g.one_minus_w);

    cplx val = std::pow(cplx(g.one_minus_w), -mp.M) / std::sqrt(g.D) *
               (c1 * diff_over_w / g.D - 0.5 * F2);
    return take_real(val, "kernel_K0");
}

Eigen::ArrayXd kernel_E(const Eigen::Ref<const Eigen::ArrayXd>& r, double t,
                        double b, const MassParams& mp) {
    Eigen::ArrayXd out(r.size());
    for (Eigen::Index i = 0; i < r.size(); ++i)
        out[i] = kernel_E(r[i], t, b, mp);
    return out;
}

Eigen::ArrayXd kernel_K1(const Eigen::Ref<const Eigen::ArrayXd>& z, double t,
                         const MassParams& mp) {
    Eigen::ArrayXd out(z.size());
    for (Eigen::Index i = 0; i < z.size(); ++i)
        out[i] = kernel_K1(z[i], t, mp);
    return out;
}

Eigen::ArrayXd kernel_K0(const Eigen::Ref<const Eigen::ArrayXd>& z, double t,
                         const MassParams& mp) {
    Eigen::ArrayXd out(z.size());
    for (Eigen::Index i = 0; i < z.size(); ++i)
        out[i] = kernel_K0(z[i], t, mp);
    return out;
}

}  // namespace dskg::kernels
