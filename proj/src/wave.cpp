#include "dskg/wave.hpp"

#include <algorithm>
#include <cmath>

#include "dskg/errors.hpp"
#include "dskg/fft.hpp"

namespace dskg::wave {

WaveSolver::WaveSolver(Geometry geom, double L, int N, double speed)
    : geom_(geom), L_(L), N_(N), speed_(speed) {
    if (!(L > 0.0)) throw DomainError("domain extent must be positive");
    if (N < 8) throw DomainError("grid too small");
    if (!(speed > 0.0)) throw DomainError("wave speed must be positive");
    if (geom == Geometry::Periodic1D) {
        h_ = 2.0 * L / N;
        pts_ = Eigen::ArrayXd::LinSpaced(N, 0, N - 1) * h_ - L;
        xi_ = fft::frequencies(N, 2.0 * L);
    } else {
        h_ = L / N;
        pts_ = Eigen::ArrayXd::LinSpaced(N, 1, N) * h_;
        xi_ = fft::frequencies(2 * N, 2.0 * L);
    }
}

WaveSolver::WaveSolver(double L, int N, Eigen::ArrayXd coeff)
    : geom_(Geometry::Periodic1D), L_(L), N_(N), variable_(true),
      coeff_(std::move(coeff)) {
    if (!(L > 0.0)) throw DomainError("domain extent must be positive");
    if (N < 8) throw DomainError("grid too small");
    if (coeff_.size() != N)
        throw DomainError("coefficient samples must match the grid");
    if (!(coeff_.minCoeff() > 0.0))
        throw DomainError("wave operator coefficient must be positive");
    h_ = 2.0 * L / N;
    pts_ = Eigen::ArrayXd::LinSpaced(N, 0, N - 1) * h_ - L;
    dt_ = 0.9 * h_ / std::sqrt(coeff_.maxCoeff());
}

Eigen::ArrayXd WaveSolver::working_data() const {
    if (geom_ == Geometry::Periodic1D) return data_;
    // odd extension of rho * u over [-L, L): index N + j holds rho_j = j h
    Eigen::ArrayXd w = Eigen::ArrayXd::Zero(2 * N_);
    for (int j = 1; j < N_; ++j) {
        double v = (j * h_) * data_[j - 1];  // data_[j-1] samples rho_j
        w[N_ + j] = v;
        w[N_ - j] = -v;
    }
    return w;
}

Eigen::ArrayXd WaveSolver::extract(const Eigen::ArrayXd& flat) const {
    if (geom_ == Geometry::Periodic1D) return flat;
    Eigen::ArrayXd u(N_);
    for (int j = 1; j < N_; ++j) u[j - 1] = flat[N_ + j] / (j * h_);
    u[N_ - 1] = 0.0;  // field vanishes at the outer radius by construction
    return u;
}

void WaveSolver::set_data(DataKind kind, const Eigen::Ref<const Eigen::ArrayXd>& g) {
    if (g.size() != N_) throw DomainError("data samples must match the grid");
    kind_ = kind;
    data_ = g;
    has_data_ = true;
    table_rmax_ = -1.0;  // invalidate any leapfrog table
    if (!variable_) ghat_ = fft::forward(working_data());
}

void WaveSolver::set_data(DataKind kind, const std::function<double(double)>& g) {
    Eigen::ArrayXd samples(N_);
    for (int j = 0; j < N_; ++j) samples[j] = g(pts_[j]);
    set_data(kind, samples);
}

Eigen::ArrayXd WaveSolver::spectral_field(double r, int order) const {
    Eigen::VectorXcd spec(xi_.size());
    for (Eigen::Index k = 0; k < xi_.size(); ++k) {
        double om = speed_ * std::abs(xi_[k]);
        double mult;
        if (kind_ == DataKind::SineData && om == 0.0) {
            // the zero mode of the sine solution is linear in r
            mult = order == 0 ? r : (order == 1 ? 1.0 : 0.0);
        } else {
            // d^k/dr^k of cos(om r) resp. sin(om r)/om via the quarter-turn
            // cycle of the trigonometric pair; exact for every order
            double c = std::cos(om * r), s = std::sin(om * r);
            int q = order & 3;
            double trig;
            if (kind_ == DataKind::CosineData)
                trig = (q == 0) ? c : (q == 1) ? -s : (q == 2) ? -c : s;
            else
                trig = (q == 0) ? s : (q == 1) ? c : (q == 2) ? -s : -c;
            int power = kind_ == DataKind::CosineData ? order : order - 1;
            mult = (power == 0 ? 1.0 : std::pow(om, power)) * trig;
        }
        spec[k] = mult * ghat_[k];
    }
    return extract(fft::inverse_real(spec));
}

Eigen::ArrayXd WaveSolver::difference_operator(const Eigen::ArrayXd& v) const {
    // divergence form with midpoint coefficients: d/dx (a dv/dx)
    Eigen::ArrayXd out(N_);
    for (int j = 0; j < N_; ++j) {
        int jm = (j + N_ - 1) % N_, jp = (j + 1) % N_;
        double a_p = 0.5 * (coeff_[j] + coeff_[jp]);
        double a_m = 0.5 * (coeff_[jm] + coeff_[j]);
        out[j] = (a_p * (v[jp] - v[j]) - a_m * (v[j] - v[jm])) / (h_ * h_);
    }
    return out;
}

Eigen::ArrayXd WaveSolver::apply_operator(
    const Eigen::Ref<const Eigen::ArrayXd>& v) const {
    if (v.size() != N_) throw DomainError("field samples must match the grid");
    if (variable_) return difference_operator(v);
    Eigen::ArrayXd flat;
    if (geom_ == Geometry::Periodic1D) {
        flat = v;
    } else {
        flat = Eigen::ArrayXd::Zero(2 * N_);
        for (int j = 1; j < N_; ++j) {
            double val = (j * h_) * v[j - 1];
            flat[N_ + j] = val;
            flat[N_ - j] = -val;
        }
    }
    Eigen::VectorXcd spec = fft::forward(flat);
    for (Eigen::Index k = 0; k < xi_.size(); ++k) {
        double om = speed_ * xi_[k];
        spec[k] *= -om * om;
    }
    return extract(fft::inverse_real(spec));
}

void WaveSolver::prepare(double r_max) {
    if (!variable_) return;
    if (!has_data_) throw DomainError("wave data not set");
    if (!(r_max >= 0.0)) throw DomainError("range must be nonnegative");
    if (table_rmax_ >= r_max) return;
    double steps_needed = std::ceil(r_max / dt_) + 3.0;
    if (steps_needed > 1e7)
        throw CFLViolation("leapfrog step count exceeds the hard cap");
    int S = static_cast<int>(steps_needed);
    slices_.resize(S + 1, N_);

    Eigen::ArrayXd v0 = (kind_ == DataKind::CosineData)
                            ? data_
                            : Eigen::ArrayXd::Zero(N_).eval();
    Eigen::ArrayXd vt0 = (kind_ == DataKind::CosineData)
                             ? Eigen::ArrayXd::Zero(N_).eval()
                             : data_;
    // Taylor start keeps the scheme second order at the first step
    Eigen::ArrayXd v1 =
        v0 + dt_ * vt0 + 0.5 * dt_ * dt_ * difference_operator(v0);
    slices_.row(0) = v0.matrix().transpose();
    slices_.row(1) = v1.matrix().transpose();
    Eigen::ArrayXd prev = v0, cur = v1;
    for (int s = 2; s <= S; ++s) {
        Eigen::ArrayXd next =
            2.0 * cur - prev + dt_ * dt_ * difference_operator(cur);
        slices_.row(s) = next.matrix().transpose();
        prev.swap(cur);
        cur.swap(next);
    }
    table_rmax_ = S * dt_;
}

Eigen::ArrayXd WaveSolver::table_field(double r, bool derivative) const {
    if (table_rmax_ < r)
        throw DomainError("range beyond the prepared leapfrog table");
    int S = static_cast<int>(slices_.rows()) - 1;
    double s = r / dt_;
    int i = std::min(static_cast<int>(std::floor(s)), S - 1);
    double u = s - i;
    auto row = [&](int k) {
        k = std::clamp(k, 0, S);
        return slices_.row(k).transpose().array();
    };
    Eigen::ArrayXd p0 = row(i - 1), p1 = row(i), p2 = row(i + 1), p3 = row(i + 2);
    // Catmull-Rom basis and its derivative
    Eigen::ArrayXd a = 2.0 * p1;
    Eigen::ArrayXd b = p2 - p0;
    Eigen::ArrayXd c = 2.0 * p0 - 5.0 * p1 + 4.0 * p2 - p3;
    Eigen::ArrayXd d = -p0 + 3.0 * p1 - 3.0 * p2 + p3;
    if (derivative)
        return 0.5 * (b + 2.0 * u * c + 3.0 * u * u * d) / dt_;
    return 0.5 * (a + u * b + u * u * c + u * u * u * d);
}

Eigen::ArrayXd WaveSolver::at(double r) const {
    if (!has_data_) throw DomainError("wave data not set");
    if (!(r >= 0.0)) throw DomainError("range must be nonnegative");
    return variable_ ? table_field(r, false) : spectral_field(r, 0);
}

Eigen::ArrayXd WaveSolver::time_derivative(double r) const {
    if (!has_data_) throw DomainError("wave data not set");
    if (!(r >= 0.0)) throw DomainError("range must be nonnegative");
    return variable_ ? table_field(r, true) : spectral_field(r, 1);
}

Eigen::ArrayXd WaveSolver::time_derivative(double r, int order) const {
    if (!has_data_) throw DomainError("wave data not set");
    if (!(r >= 0.0)) throw DomainError("range must be nonnegative");
    if (order < 0) throw DomainError("derivative order must be nonnegative");
    if (!variable_) return spectral_field(r, order);
    if (order == 0) return table_field(r, false);
    if (order == 1) return table_field(r, true);
    throw DomainError("higher time derivatives need a spectral grid");
}

}  // namespace dskg::wave
