#pragma once

#include "effdiff/grid.hpp"
#include "effdiff/sparse.hpp"

#include <vector>

namespace effdiff {

struct CellProblemResult {
    SymTensor effective;
    std::vector<ScalarField> correctors;  // one zero-mean Y-periodic field per direction
    std::vector<SolveReport> reports;
};

/// Solves the periodic corrector problems on the period cell the field is
/// defined on and returns the averaged effective tensor
///   d_eff[i][j] = < d_ij - d_ik dphi_j/dy_k >.
/// The zero-mean constraint is enforced by projecting the constant mode out
/// of the residual every iteration.
CellProblemResult solve_cell_problem(const TensorField& periodic_field,
                                     const SolverControl& control = {});

}  // namespace effdiff
