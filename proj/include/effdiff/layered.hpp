#pragma once

#include "effdiff/tensor.hpp"

#include <span>
#include <utility>

namespace effdiff {

/// Perfectly layered two-phase medium: alternating slabs of phase 1 (aqueous,
/// thickness a+) and phase 2 (lipid, thickness a-), both with diagonal
/// diffusion tensors. d_minus is the raw phase-2 tensor; the partition
/// transform (d2 -> d2/K_p) is applied inside layered_effective_tensor.
struct LayeredMedium {
    double thickness_plus = 0;   // a+ > 0, or volume fraction p1
    double thickness_minus = 0;  // a- > 0, or volume fraction p2
    SymTensor d_plus;
    SymTensor d_minus;
    double partition_coefficient = 1.0;
    int normal_axis = 0;  // axis perpendicular to the layers

    void validate() const;
};

/// Closed-form effective tensor of a layered medium: volume-weighted
/// arithmetic mean tangential to the layers, volume-weighted harmonic mean
/// along the normal, zero off-diagonals.
SymTensor layered_effective_tensor(const LayeredMedium& medium);

/// Length-weighted harmonic mean of a piecewise-constant 1D diffusivity
/// profile given as (length, diffusivity) segments.
double harmonic_mean_profile(std::span<const std::pair<double, double>> segments);

/// Two-phase coefficients of the interface-coupled formulation.
struct TwoPhaseCoefficients {
    SymTensor d1;
    SymTensor d2;
    double r1 = 0;
    double r2 = 0;
    double f1 = 0;
    double f2 = 0;
    double partition_coefficient = 1.0;

    void validate() const;
};

/// Per-region coefficients of the transformed single-field equation
/// sigma*du/dt - div(d grad u) + r*u = f.
struct SingleFieldCoefficients {
    SymTensor d;
    double sigma = 1;
    double r = 0;
    double f = 0;
};

struct TransformedCoefficients {
    SingleFieldCoefficients region1;
    SingleFieldCoefficients region2;
};

/// Removes the partition-coefficient jump: region 1 is unchanged, region 2
/// gets d2/K_p, sigma = 1/K_p, r2/K_p. Identity when K_p = 1.
TransformedCoefficients transform_partition(const TwoPhaseCoefficients& c);

}  // namespace effdiff
