#include "effdiff/transient.hpp"

#include "effdiff/assembly.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace effdiff {

void TransientOptions::validate() const {
    if (!(dt > 0)) throw std::invalid_argument("TransientOptions: dt must be > 0");
    if (!(t_end >= dt)) throw std::invalid_argument("TransientOptions: t_end must be >= dt");
}

TransientResult solve_transient(const TensorField& field, const ScalarField& initial,
                                const EstimationBC& bc, const TransientOptions& options) {
    field.validate();
    initial.validate();
    bc.validate();
    options.validate();
    const StructuredGrid& g = field.grid;
    if (!initial.grid.same_layout(g))
        throw std::invalid_argument("solve_transient: initial state grid does not match field");

    const BoundarySetup boundary = bc.as_boundary_setup(g.dim);
    const DofMap dofs = make_dof_map(g, boundary);
    const auto pattern = build_pattern(g, dofs);
    const auto eq_by_node = build_eq_by_node_pattern(g, dofs);

    StationarySystem sys = assemble_stationary(field, boundary, dofs, pattern);
    const SparseMatrix mass = assemble_capacity_mass(field, dofs, eq_by_node, 1.0 / options.dt);

    // Fold the mass term into the system matrix and its Dirichlet lift into
    // the constant part of the right-hand side.
    std::vector<double> const_rhs = sys.rhs;
    for (int i = 0; i < mass.rows(); ++i)
        for (int k = mass.pattern->row_ptr[i]; k < mass.pattern->row_ptr[i + 1]; ++k) {
            const int node = mass.pattern->col[k];
            const int ej = dofs.eq[static_cast<size_t>(node)];
            if (ej >= 0)
                sys.matrix.add(i, ej, mass.values[static_cast<size_t>(k)]);
            else
                const_rhs[static_cast<size_t>(i)] -=
                    mass.values[static_cast<size_t>(k)] * dofs.fixed[static_cast<size_t>(node)];
        }

    const int n_steps = static_cast<int>(std::ceil(options.t_end / options.dt - 1e-12));
    const bool has_outlet = !bc.insulated_all;

    TransientResult result;
    result.final_state = initial;
    ScalarField& u = result.final_state;
    result.flux.times.push_back(0.0);
    result.flux.flux.push_back(
        has_outlet ? bc.mass_transfer * (boundary_average(u, {0, 1}) - bc.c1) : 0.0);
    result.capacity_mass.push_back(capacity_weighted_mass(field, u));

    std::vector<double> x = restrict_to_equations(dofs, u);
    std::vector<double> rhs(static_cast<size_t>(dofs.n_eq));

    for (int step = 1; step <= n_steps; ++step) {
        rhs = const_rhs;
        for (int i = 0; i < mass.rows(); ++i) {
            double s = 0;
            for (int k = mass.pattern->row_ptr[i]; k < mass.pattern->row_ptr[i + 1]; ++k)
                s += mass.values[static_cast<size_t>(k)] *
                     u.values[static_cast<size_t>(mass.pattern->col[k])];
            rhs[static_cast<size_t>(i)] += s;
        }

        try {
            cg_solve(sys.matrix, rhs, x, options.control, g.dim);
        } catch (const SolveError& err) {
            throw SolveError("solve_transient: step " + std::to_string(step) + " failed: " +
                                 err.what(),
                             err.iterations, err.rel_residual);
        }

        u = expand_solution(g, dofs, x);
        result.flux.times.push_back(step * options.dt);
        result.flux.flux.push_back(
            has_outlet ? bc.mass_transfer * (boundary_average(u, {0, 1}) - bc.c1) : 0.0);
        result.capacity_mass.push_back(capacity_weighted_mass(field, u));
    }
    return result;
}

ScalarField gaussian_profile(const StructuredGrid& grid, double amplitude, double x_scale) {
    grid.validate();
    if (!(x_scale > 0)) throw std::invalid_argument("gaussian_profile: x_scale must be > 0");
    ScalarField u = ScalarField::zero(grid);
    const int nz = grid.dim == 3 ? grid.nodes(2) : 1;
    for (int k = 0; k < nz; ++k)
        for (int j = 0; j < grid.nodes(1); ++j)
            for (int i = 0; i < grid.nodes(0); ++i) {
                const double x = i * grid.spacing(0) / x_scale;
                u.values[static_cast<size_t>(grid.node_index(i, j, k))] =
                    amplitude * std::exp(-1000.0 * x * x);
            }
    return u;
}

}  // namespace effdiff
