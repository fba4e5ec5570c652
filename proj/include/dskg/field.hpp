#pragma once

#include <Eigen/Core>
#include <vector>

#include "dskg/kernels.hpp"
#include "dskg/wave.hpp"

namespace dskg {

// A sampled spatial field together with the grid it lives on. For
// Periodic1D the samples cover [-extent, extent) and the period is
// 2*extent; for Radial3D they cover radii j*extent/N, j = 1..N.
struct Field {
    Eigen::ArrayXd values;
    double extent = 0.0;
    wave::Geometry geom = wave::Geometry::Periodic1D;
};

// A time-indexed family of fields on one common grid.
struct Trajectory {
    std::vector<double> times;
    std::vector<Eigen::ArrayXd> fields;
    double extent = 0.0;
    wave::Geometry geom = wave::Geometry::Periodic1D;
    kernels::MassParams mass;

    Field field_at(std::size_t i) const {
        return Field{fields.at(i), extent, geom};
    }
};

}  // namespace dskg
