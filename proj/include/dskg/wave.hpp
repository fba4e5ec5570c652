#pragma once

#include <Eigen/Core>
#include <functional>

namespace dskg::wave {

// Which piece of the Cauchy data the base solution propagates:
// CosineData starts from (g, 0), SineData from (0, g).
enum class DataKind { CosineData, SineData };

enum class Geometry { Periodic1D, Radial3D };

// Solves the flat-space wave problem v_rr = A v that underlies the integral
// transform. Two backends:
//   * spectral: A = speed^2 * Laplacian on a periodic grid, exact in time;
//     Radial3D is reduced to 1-D through the odd extension of rho * v.
//   * leapfrog: A = d/dx (a(x) d/dx) with a sampled coefficient (1-D only);
//     call prepare(r_max) once, after which at()/time_derivative() read a
//     cubic interpolation of the stored time slices.
//
// Grids: Periodic1D samples x_j = -L + 2L j/N (period 2L); Radial3D samples
// rho_j = j L/N for j = 1..N, with the field pinned to zero at rho = L.
class WaveSolver {
  public:
    WaveSolver(Geometry geom, double L, int N, double speed = 1.0);
    WaveSolver(double L, int N, Eigen::ArrayXd coeff);  // variable speed^2

    void set_data(DataKind kind, const Eigen::Ref<const Eigen::ArrayXd>& g);
    void set_data(DataKind kind, const std::function<double(double)>& g);

    // March the leapfrog table out to range r_max (no-op for spectral).
    void prepare(double r_max);

    Eigen::ArrayXd at(double r) const;               // field at range r
    Eigen::ArrayXd time_derivative(double r) const;  // d/dr of the field

    // d^order/dr^order of the field. Orders beyond 1 differentiate the
    // spectral multipliers and are only available on the spectral paths.
    Eigen::ArrayXd time_derivative(double r, int order) const;

    // The spatial operator itself: speed^2 * Laplacian (spectral paths) or
    // the divergence-form difference operator (variable path). Used by
    // residual checks downstream.
    Eigen::ArrayXd apply_operator(const Eigen::Ref<const Eigen::ArrayXd>& v) const;

    const Eigen::ArrayXd& grid() const { return pts_; }
    double spacing() const { return h_; }
    Geometry geometry() const { return geom_; }
    int size() const { return N_; }
    double extent() const { return L_; }

  private:
    Eigen::ArrayXd working_data() const;
    Eigen::ArrayXd extract(const Eigen::ArrayXd& flat) const;
    Eigen::ArrayXd spectral_field(double r, int order) const;
    Eigen::ArrayXd table_field(double r, bool derivative) const;
    Eigen::ArrayXd difference_operator(const Eigen::ArrayXd& v) const;

    Geometry geom_;
    double L_;
    int N_;
    double h_;
    double speed_ = 1.0;
    bool variable_ = false;
    Eigen::ArrayXd coeff_;   // a(x) on the grid (variable path)
    Eigen::ArrayXd pts_;     // exposed sample points
    DataKind kind_ = DataKind::CosineData;
    bool has_data_ = false;
    Eigen::ArrayXd data_;    // data samples on the exposed grid

    // spectral state
    Eigen::ArrayXd xi_;      // working-grid frequencies
    Eigen::VectorXcd ghat_;  // working-grid data spectrum

    // leapfrog state
    double dt_ = 0.0;
    double table_rmax_ = -1.0;
    Eigen::MatrixXd slices_;  // one row per time step
};

}  // namespace dskg::wave
