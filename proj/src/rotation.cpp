#include "effdiff/rotation.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace effdiff {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

Matrix rot3_about_axis3(double psi) {
    Matrix r = Matrix::identity(3);
    r.entry(0, 0) = std::cos(psi);
    r.entry(0, 1) = std::sin(psi);
    r.entry(1, 0) = -std::sin(psi);
    r.entry(1, 1) = std::cos(psi);
    return r;
}

Matrix rot3_about_axis1(double beta) {
    Matrix r = Matrix::identity(3);
    r.entry(1, 1) = std::cos(beta);
    r.entry(1, 2) = std::sin(beta);
    r.entry(2, 1) = -std::sin(beta);
    r.entry(2, 2) = std::cos(beta);
    return r;
}

}  // namespace

void Rotation2::validate() const {
    if (!(phi >= 0 && phi < two_pi))
        throw std::invalid_argument("Rotation2: phi outside [0, 2*pi)");
}

void Rotation3::validate() const {
    if (!(alpha >= 0 && alpha < two_pi))
        throw std::invalid_argument("Rotation3: alpha outside [0, 2*pi)");
    if (!(beta >= 0 && beta <= std::numbers::pi))
        throw std::invalid_argument("Rotation3: beta outside [0, pi]");
    if (!(gamma >= 0 && gamma < two_pi))
        throw std::invalid_argument("Rotation3: gamma outside [0, 2*pi)");
}

Matrix rotation_matrix(const Rotation2& rot) {
    rot.validate();
    Matrix t;
    t.dim = 2;
    t.entry(0, 0) = std::cos(rot.phi);
    t.entry(0, 1) = std::sin(rot.phi);
    t.entry(1, 0) = -std::sin(rot.phi);
    t.entry(1, 1) = std::cos(rot.phi);
    return t;
}

Matrix rotation_matrix(const Rotation3& rot) {
    rot.validate();
    // T = R3(gamma) R1(beta) R3(alpha)
    return multiply(rot3_about_axis3(rot.gamma),
                    multiply(rot3_about_axis1(rot.beta), rot3_about_axis3(rot.alpha)));
}

Rotation2 sample_rotation_2d(RandomStream& rng) {
    Rotation2 rot;
    rot.phi = two_pi * rng.uniform();
    return rot;
}

Rotation3 sample_rotation_3d(RandomStream& rng) {
    Rotation3 rot;
    rot.alpha = two_pi * rng.uniform();
    rot.beta = std::acos(1.0 - 2.0 * rng.uniform());
    rot.gamma = two_pi * rng.uniform();
    return rot;
}

}  // namespace effdiff
