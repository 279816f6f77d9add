#pragma once

#include "effdiff/grid.hpp"
#include "effdiff/sparse.hpp"

#include <array>
#include <memory>
#include <vector>

namespace effdiff {

enum class FaceKind { Natural, Dirichlet, Robin };

struct FaceCondition {
    FaceKind kind = FaceKind::Natural;
    double value = 0;          // Dirichlet trace, or Robin bulk concentration
    double mass_transfer = 0;  // Robin M
};

/// Per-face boundary conditions, indexed 2*axis + side.
struct BoundarySetup {
    std::array<FaceCondition, 6> face{};

    FaceCondition& at(Face f) { return face[2 * f.axis + f.side]; }
    const FaceCondition& at(Face f) const { return face[2 * f.axis + f.side]; }
};

/// Node -> equation numbering. eq[node] < 0 marks a Dirichlet-eliminated node
/// whose value is fixed[node]; a periodic map folds wrap-around nodes onto
/// their representatives instead.
struct DofMap {
    int n_eq = 0;
    std::vector<int> eq;
    std::vector<double> fixed;
    bool periodic = false;
};

DofMap make_dof_map(const StructuredGrid& grid, const BoundarySetup& boundary);
DofMap make_periodic_dof_map(const StructuredGrid& grid);

/// Equation-by-equation coupling pattern (nodes sharing an element).
std::shared_ptr<const SparsePattern> build_pattern(const StructuredGrid& grid, const DofMap& dofs);

/// Equation-by-node pattern, for applying mass matrices to full nodal vectors.
std::shared_ptr<const SparsePattern> build_eq_by_node_pattern(const StructuredGrid& grid,
                                                              const DofMap& dofs);

struct StationarySystem {
    SparseMatrix matrix;
    std::vector<double> rhs;
};

/// Multilinear (Q1) stiffness with element-constant tensors, plus reaction
/// mass where the field carries r, plus Robin boundary terms. The right-hand
/// side collects the Dirichlet lift and the Robin bulk load. The assembled
/// matrix is symmetric positive definite by construction.
StationarySystem assemble_stationary(const TensorField& field, const BoundarySetup& boundary,
                                     const DofMap& dofs,
                                     std::shared_ptr<const SparsePattern> pattern);

/// sigma-weighted consistent mass, scaled by `scale`, as equation rows by
/// full-node columns.
SparseMatrix assemble_capacity_mass(const TensorField& field, const DofMap& dofs,
                                    std::shared_ptr<const SparsePattern> eq_by_node,
                                    double scale);

/// Right-hand side of the periodic cell problem in coordinate `direction`:
/// b_v = integral of grad(v) . (d e_dir).
std::vector<double> assemble_cell_rhs(const TensorField& field, const DofMap& dofs,
                                      int direction);

/// Scatter an equation vector back to a nodal field, filling Dirichlet values
/// (or copying periodic representatives).
ScalarField expand_solution(const StructuredGrid& grid, const DofMap& dofs,
                            std::span<const double> x);

/// Restrict a nodal field to its equation vector.
std::vector<double> restrict_to_equations(const DofMap& dofs, const ScalarField& u);

namespace detail {

/// Reference-element integrals for the uniform grid (all elements congruent).
struct ElementKernels {
    int dim = 2;
    int corners = 4;
    double volume = 0;
    // grad_pair[a][b][ci][cj] = integral of dN_ci/dx_a * dN_cj/dx_b
    double grad_pair[3][3][8][8] = {};
    // mass[ci][cj] = integral of N_ci * N_cj
    double mass[8][8] = {};
    // grad_int[a][ci] = integral of dN_ci/dx_a
    double grad_int[3][8] = {};
    // face kernels for a face with normal `axis`
    double face_mass[3][4][4] = {};
    double face_load[3] = {};  // integral of one shape function over the face
    double face_area[3] = {};
};

ElementKernels make_element_kernels(const StructuredGrid& grid);

}  // namespace detail

}  // namespace effdiff
