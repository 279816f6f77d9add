#pragma once

#include "effdiff/assembly.hpp"
#include "effdiff/grid.hpp"
#include "effdiff/sparse.hpp"

namespace effdiff {

/// Boundary data of the effective-diffusivity estimation problem: fixed
/// concentration c0 on the x=0 face, free diffusion -n.(d grad u) = M(u - c1)
/// into a bulk at concentration c1 on the x=L face, all other faces
/// insulated. insulated() turns every face into a zero-flux boundary (used by
/// transient conservation runs).
struct EstimationBC {
    double c0 = 1.0;
    double c1 = 0.0;
    double mass_transfer = 0.0;
    bool insulated_all = false;

    static EstimationBC insulated() { return {0.0, 0.0, 0.0, true}; }
    BoundarySetup as_boundary_setup(int dim) const;
    void validate() const;
};

/// Problem context reusable across coefficient realizations on one grid
/// (the sparsity pattern is the expensive shared part).
class StationaryProblem {
public:
    StationaryProblem(const StructuredGrid& grid, const BoundarySetup& boundary);

    ScalarField solve(const TensorField& field, const SolverControl& control = {}) const;
    const DofMap& dofs() const { return dofs_; }

private:
    StructuredGrid grid_;
    BoundarySetup boundary_;
    DofMap dofs_;
    std::shared_ptr<const SparsePattern> pattern_;
};

/// One-shot general solve with per-face conditions.
ScalarField solve_stationary(const TensorField& field, const BoundarySetup& boundary,
                             const SolverControl& control = {});

/// Estimation BVP of the experimental protocol.
ScalarField solve_stationary_bvp(const TensorField& field, const EstimationBC& bc,
                                 const SolverControl& control = {});

/// Face average (1/|G|) * integral of the multilinear trace; exact quadrature.
double boundary_average(const ScalarField& u, Face face);

/// Solves the estimation BVP and returns N_average * L / (c0 - u_out), the
/// apparent effective diffusivity in x-direction.
double estimate_effective_diffusivity(const TensorField& field, const EstimationBC& bc,
                                      const SolverControl& control = {});

/// Same estimate from an already-computed solution field.
double effective_diffusivity_from_solution(const ScalarField& u, const EstimationBC& bc,
                                           double length);

}  // namespace effdiff
