#include "effdiff/bvp.hpp"

#include <cmath>
#include <stdexcept>

namespace effdiff {

void EstimationBC::validate() const {
    if (insulated_all) return;
    if (!(mass_transfer > 0))
        throw std::invalid_argument("EstimationBC: mass transfer coefficient must be > 0");
}

BoundarySetup EstimationBC::as_boundary_setup(int) const {
    BoundarySetup setup;
    if (insulated_all) return setup;
    setup.at({0, 0}) = {FaceKind::Dirichlet, c0, 0.0};
    setup.at({0, 1}) = {FaceKind::Robin, c1, mass_transfer};
    return setup;
}

StationaryProblem::StationaryProblem(const StructuredGrid& grid, const BoundarySetup& boundary)
    : grid_(grid), boundary_(boundary), dofs_(make_dof_map(grid, boundary)) {
    pattern_ = build_pattern(grid_, dofs_);
}

ScalarField StationaryProblem::solve(const TensorField& field,
                                     const SolverControl& control) const {
    field.validate();
    if (!field.grid.same_layout(grid_))
        throw std::invalid_argument("StationaryProblem: field grid does not match");
    StationarySystem sys = assemble_stationary(field, boundary_, dofs_, pattern_);
    std::vector<double> x(static_cast<size_t>(dofs_.n_eq), 0.0);
    cg_solve(sys.matrix, sys.rhs, x, control, grid_.dim);
    return expand_solution(grid_, dofs_, x);
}

ScalarField solve_stationary(const TensorField& field, const BoundarySetup& boundary,
                             const SolverControl& control) {
    return StationaryProblem(field.grid, boundary).solve(field, control);
}

ScalarField solve_stationary_bvp(const TensorField& field, const EstimationBC& bc,
                                 const SolverControl& control) {
    bc.validate();
    return solve_stationary(field, bc.as_boundary_setup(field.grid.dim), control);
}

double boundary_average(const ScalarField& u, Face face) {
    u.validate();
    const StructuredGrid& g = u.grid;
    if (face.axis < 0 || face.axis >= g.dim || face.side < 0 || face.side > 1)
        throw std::invalid_argument("boundary_average: not a boundary face");

    const int fixed_node = face.side ? g.cells[face.axis] : 0;
    int tang[2] = {-1, -1};
    int nt = 0;
    for (int a = 0; a < g.dim; ++a)
        if (a != face.axis) tang[nt++] = a;

    const int n0 = g.cells[tang[0]];
    const int n1 = nt == 2 ? g.cells[tang[1]] : 1;
    const int fc = 1 << nt;

    double sum = 0;
    for (int j = 0; j < n1; ++j)
        for (int i = 0; i < n0; ++i) {
            double avg = 0;
            for (int c = 0; c < fc; ++c) {
                int coord[3] = {0, 0, 0};
                coord[face.axis] = fixed_node;
                coord[tang[0]] = i + (c & 1);
                if (nt == 2) coord[tang[1]] = j + ((c >> 1) & 1);
                avg += u.values[static_cast<size_t>(g.node_index(coord[0], coord[1], coord[2]))];
            }
            sum += avg / fc;
        }
    return sum / (static_cast<double>(n0) * n1);
}

double effective_diffusivity_from_solution(const ScalarField& u, const EstimationBC& bc,
                                           double length) {
    const double u_out = boundary_average(u, {0, 1});
    const double drop = bc.c0 - u_out;
    if (std::abs(drop) < 1e-14 * std::abs(bc.c0))
        throw std::runtime_error(
            "estimate_effective_diffusivity: degenerate concentration drop across the domain");
    const double n_average = bc.mass_transfer * (u_out - bc.c1);
    return n_average * length / drop;
}

double estimate_effective_diffusivity(const TensorField& field, const EstimationBC& bc,
                                      const SolverControl& control) {
    bc.validate();
    if (bc.insulated_all || !(bc.mass_transfer > 0))
        throw std::invalid_argument("estimate_effective_diffusivity: needs the Robin outlet");
    if (bc.c0 == bc.c1)
        throw std::invalid_argument("estimate_effective_diffusivity: c0 must differ from c1");
    const ScalarField u = solve_stationary_bvp(field, bc, control);
    return effective_diffusivity_from_solution(u, bc, field.grid.extent[0]);
}

}  // namespace effdiff
