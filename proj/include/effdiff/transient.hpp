#pragma once

#include "effdiff/bvp.hpp"
#include "effdiff/grid.hpp"
#include "effdiff/sparse.hpp"

#include <vector>

namespace effdiff {

/// Mean outlet flux N_average(t) sampled at every accepted time step,
/// starting with the initial state at t = 0.
struct FluxHistory {
    std::vector<double> times;
    std::vector<double> flux;
};

struct TransientOptions {
    double t_end = 1.0;
    double dt = 0.1;
    // Per-step tolerance sits below the stationary default because the
    // conservation budget is spent across every step of the run.
    SolverControl control{.rel_tol = 1e-12};

    void validate() const;
};

struct TransientResult {
    FluxHistory flux;
    std::vector<double> capacity_mass;  // integral of sigma*u at each recorded time
    ScalarField final_state;
};

/// Backward-Euler time stepping of sigma du/dt - div(d grad u) + r u = 0 with
/// the same spatial discretization as the stationary solver. The system
/// matrix is assembled once; each step reuses the previous state as the CG
/// starting guess.
TransientResult solve_transient(const TensorField& field, const ScalarField& initial,
                                const EstimationBC& bc, const TransientOptions& options);

/// Nodal Gaussian profile amp * exp(-1000 (x/x_scale)^2), constant across the
/// tangential axes (the transient comparison's canonical initial state).
ScalarField gaussian_profile(const StructuredGrid& grid, double amplitude, double x_scale);

}  // namespace effdiff
