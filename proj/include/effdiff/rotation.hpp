#pragma once

#include "effdiff/seeding.hpp"
#include "effdiff/tensor.hpp"

namespace effdiff {

/// Planar rotation by phi in [0, 2*pi).
struct Rotation2 {
    double phi = 0;
    void validate() const;
};

/// Euler-angle triple (z-x-z convention): first alpha about axis 3, then beta
/// about the new axis 1, then gamma about the new axis 3.
/// alpha, gamma in [0, 2*pi); beta in [0, pi].
struct Rotation3 {
    double alpha = 0;
    double beta = 0;
    double gamma = 0;
    void validate() const;
};

Matrix rotation_matrix(const Rotation2& rot);
Matrix rotation_matrix(const Rotation3& rot);

/// Haar-uniform samples: phi uniform on [0, 2*pi).
Rotation2 sample_rotation_2d(RandomStream& rng);

/// Haar-uniform samples on SO(3) via the density sin(beta)/(8 pi^2):
/// alpha, gamma uniform; beta = arccos(1 - 2u) by inverse CDF.
/// Consumes exactly three deviates in (alpha, beta, gamma) order.
Rotation3 sample_rotation_3d(RandomStream& rng);

}  // namespace effdiff
