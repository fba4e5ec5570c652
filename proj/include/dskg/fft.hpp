#pragma once

#include <Eigen/Core>
#include <cmath>
#include <unsupported/Eigen/FFT>

namespace dskg::fft {

// Unnormalized DFT of a real sample vector (divide by size for mode
// amplitudes).
inline Eigen::VectorXcd forward(const Eigen::Ref<const Eigen::ArrayXd>& x) {
    Eigen::FFT<double> engine;
    Eigen::VectorXd t = x.matrix();
    Eigen::VectorXcd X;
    engine.fwd(X, t);
    return X;
}

// Inverse transform (with the 1/N normalization), real part.
inline Eigen::ArrayXd inverse_real(const Eigen::VectorXcd& X) {
    Eigen::FFT<double> engine;
    Eigen::VectorXcd t;
    engine.inv(t, X);
    return t.real().array();
}

// Signed angular frequencies 2*pi*k/period in DFT ordering. The Nyquist bin
// of an even-length grid comes out positive; every multiplier we apply is
// even in the frequency, so the sign convention there is immaterial.
inline Eigen::ArrayXd frequencies(int N, double period) {
    Eigen::ArrayXd xi(N);
    for (int k = 0; k < N; ++k) {
        int kt = (k <= N / 2) ? k : k - N;
        xi[k] = 2.0 * M_PI * kt / period;
    }
    return xi;
}

}  // namespace dskg::fft
