#include "effdiff/cell_problem.hpp"

#include "effdiff/assembly.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace effdiff {

CellProblemResult solve_cell_problem(const TensorField& field, const SolverControl& control) {
    field.validate();
    const StructuredGrid& g = field.grid;
    const DofMap dofs = make_periodic_dof_map(g);
    const auto pattern = build_pattern(g, dofs);

    BoundarySetup all_natural;  // periodicity lives in the dof map
    StationarySystem sys = assemble_stationary(field, all_natural, dofs, pattern);

    SolverControl periodic_control = control;
    periodic_control.project_mean = true;

    const detail::ElementKernels kern = detail::make_element_kernels(g);
    double cell_volume = 1;
    for (int a = 0; a < g.dim; ++a) cell_volume *= g.extent[a];

    CellProblemResult result;
    result.effective = SymTensor::zero(g.dim);
    double raw[3][3] = {};

    for (int dir = 0; dir < g.dim; ++dir) {
        std::vector<double> rhs = assemble_cell_rhs(field, dofs, dir);
        std::vector<double> x(static_cast<size_t>(dofs.n_eq), 0.0);
        result.reports.push_back(cg_solve(sys.matrix, rhs, x, periodic_control, g.dim));

        const double mean =
            std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
        if (std::abs(mean) > 1e-8 * (1.0 + std::sqrt(std::inner_product(
                                               x.begin(), x.end(), x.begin(), 0.0))))
            throw std::logic_error("solve_cell_problem: zero-mean constraint drifted");

        ScalarField phi = expand_solution(g, dofs, x);

        // d_eff[i][dir] = < d_i,dir - d_ik dphi/dy_k >
        const int nz = g.dim == 3 ? g.cells[2] : 1;
        for (int kk = 0; kk < nz; ++kk)
            for (int j = 0; j < g.cells[1]; ++j)
                for (int i = 0; i < g.cells[0]; ++i) {
                    const SymTensor& d =
                        field.tensors[static_cast<size_t>(g.cell_index(i, j, kk))];
                    double grad_int[3] = {0, 0, 0};
                    for (int c = 0; c < kern.corners; ++c) {
                        const double phi_c = phi.values[static_cast<size_t>(g.node_index(
                            i + (c & 1), j + ((c >> 1) & 1), kk + ((c >> 2) & 1)))];
                        for (int a = 0; a < g.dim; ++a)
                            grad_int[a] += phi_c * kern.grad_int[a][c];
                    }
                    for (int row = 0; row < g.dim; ++row) {
                        double v = d(row, dir) * kern.volume;
                        for (int a = 0; a < g.dim; ++a) v -= d(row, a) * grad_int[a];
                        raw[row][dir] += v;
                    }
                }

        result.correctors.push_back(std::move(phi));
    }

    for (int i = 0; i < g.dim; ++i)
        for (int j = i; j < g.dim; ++j)
            result.effective.entry(i, j) =
                0.5 * (raw[i][j] + raw[j][i]) / cell_volume;

    if (!result.effective.is_positive_definite())
        throw std::logic_error("solve_cell_problem: effective tensor not positive definite");
    return result;
}

}  // namespace effdiff
