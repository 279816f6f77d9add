#include "effdiff/bvp.hpp"

#include "effdiff/assembly.hpp"
#include "effdiff/seeding.hpp"

#include "test_oracles.hpp"

#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <vector>

using namespace effdiff;

TEST_CASE("constant isotropic field: Robin solution is linear in x") {
    StructuredGrid g{2, {2.0, 1.0, 1}, {16, 8, 1}};
    const double d = 3.0, m_coeff = 0.8, c0 = 1.0, c1 = 0.0, length = 2.0;
    const TensorField field = TensorField::uniform(g, SymTensor::isotropic(2, d));
    const EstimationBC bc{c0, c1, m_coeff};
    const ScalarField u = solve_stationary_bvp(field, bc);

    const double slope = -m_coeff * (c0 - c1) / (d + m_coeff * length);
    for (int j = 0; j <= g.cells[1]; ++j)
        for (int i = 0; i <= g.cells[0]; ++i) {
            const double x = i * g.spacing(0);
            CHECK(u.values[static_cast<size_t>(g.node_index(i, j))] ==
                  doctest::Approx(c0 + slope * x).epsilon(1e-10));
        }
    // u(L) = c0 * d / (d + M L) for c1 = 0
    CHECK(boundary_average(u, {0, 1}) ==
          doctest::Approx(c0 * d / (d + m_coeff * length)).epsilon(1e-10));
}

TEST_CASE("doubling d and M leaves the solution unchanged") {
    StructuredGrid g{2, {1, 1, 1}, {12, 12, 1}};
    RandomStream rng(8);
    TensorField field;
    field.grid = g;
    field.tensors.resize(static_cast<size_t>(g.total_cells()));
    for (auto& t : field.tensors) t = SymTensor::isotropic(2, 0.5 + rng.uniform());

    TensorField doubled = field;
    for (auto& t : doubled.tensors) t = t * 2.0;

    const ScalarField u1 = solve_stationary_bvp(field, {1.0, 0.0, 0.5});
    const ScalarField u2 = solve_stationary_bvp(doubled, {1.0, 0.0, 1.0});
    for (size_t i = 0; i < u1.values.size(); ++i)
        CHECK(u1.values[i] == doctest::Approx(u2.values[i]).epsilon(1e-14));
}

TEST_CASE("two-slab transmission solution is reproduced exactly") {
    const oracle::TwoSlab exact{1.0, 0.375, 2.0, 0.25, 1.0, 0.0, 1.5};
    StructuredGrid g{2, {exact.length, 0.5, 1}, {16, 4, 1}};  // interface at node 6
    TensorField field;
    field.grid = g;
    field.tensors.resize(static_cast<size_t>(g.total_cells()));
    for (int j = 0; j < g.cells[1]; ++j)
        for (int i = 0; i < g.cells[0]; ++i) {
            const double xc = (i + 0.5) * g.spacing(0);
            field.tensors[static_cast<size_t>(g.cell_index(i, j))] =
                SymTensor::isotropic(2, xc < exact.interface ? exact.d_a : exact.d_b);
        }

    const ScalarField u =
        solve_stationary_bvp(field, {exact.c0, exact.c1, exact.mass_transfer});
    for (int j = 0; j <= g.cells[1]; ++j)
        for (int i = 0; i <= g.cells[0]; ++i)
            CHECK(u.values[static_cast<size_t>(g.node_index(i, j))] ==
                  doctest::Approx(exact.value(i * g.spacing(0))).epsilon(1e-10));

    // and the estimator returns the length-weighted harmonic mean L / R
    const double estimate =
        estimate_effective_diffusivity(field, {exact.c0, exact.c1, exact.mass_transfer});
    CHECK(estimate == doctest::Approx(exact.length / exact.resistance()).epsilon(1e-10));
}

TEST_CASE("boundary averages of simple traces") {
    StructuredGrid g{2, {1, 1, 1}, {8, 8, 1}};
    ScalarField u = ScalarField::constant(g, 5.0);
    CHECK(boundary_average(u, {0, 1}) == doctest::Approx(5.0));

    for (int j = 0; j <= 8; ++j)
        for (int i = 0; i <= 8; ++i)
            u.values[static_cast<size_t>(g.node_index(i, j))] = i * g.spacing(0);  // u = x
    CHECK(boundary_average(u, {0, 1}) == doctest::Approx(1.0));

    for (int j = 0; j <= 8; ++j)
        for (int i = 0; i <= 8; ++i)
            u.values[static_cast<size_t>(g.node_index(i, j))] = j * g.spacing(1);  // u = y
    CHECK(boundary_average(u, {0, 1}) == doctest::Approx(0.5));
}

TEST_CASE("estimator is exact for constant tensors with a clean x-row") {
    SUBCASE("isotropic, M swept over six orders of magnitude") {
        StructuredGrid g{2, {1, 1, 1}, {16, 16, 1}};
        const double d = 5.0;
        const TensorField field = TensorField::uniform(g, SymTensor::isotropic(2, d));
        for (double m_rel : {1e-3, 1e-1, 1.0, 1e1, 1e3}) {
            const double est = estimate_effective_diffusivity(field, {1.0, 0.0, m_rel * d});
            CHECK(est == doctest::Approx(d).epsilon(1e-8));
        }
    }

    SUBCASE("anisotropic with zero off-diagonals in the x-row") {
        StructuredGrid g{3, {1, 1, 1}, {8, 8, 8}};
        SymTensor q = SymTensor::diag3(3.0, 9.0, 4.0);
        q.entry(1, 2) = 2.0;  // yz coupling only
        const TensorField field = TensorField::uniform(g, q);
        const double est = estimate_effective_diffusivity(field, {1.0, 0.0, 1.5});
        CHECK(est == doctest::Approx(3.0).epsilon(1e-8));
    }
}

TEST_CASE("degenerate concentration drop is refused") {
    StructuredGrid g{2, {1, 1, 1}, {4, 4, 1}};
    const TensorField field = TensorField::uniform(g, SymTensor::isotropic(2, 1.0));
    ScalarField u = ScalarField::constant(g, 1.0);  // u == c0 -> zero drop
    const EstimationBC bc{1.0, 0.0, 1.0};
    CHECK_THROWS_AS(effective_diffusivity_from_solution(u, bc, 1.0), std::runtime_error);
}

TEST_CASE("discrete maximum principle on isotropic fields with square cells") {
    StructuredGrid g{2, {1, 1, 1}, {20, 20, 1}};
    RandomStream rng(21);
    TensorField field;
    field.grid = g;
    field.tensors.resize(static_cast<size_t>(g.total_cells()));
    for (auto& t : field.tensors) t = SymTensor::isotropic(2, 0.1 + 9.9 * rng.uniform());

    const EstimationBC bc{1.0, 0.0, 2.0};
    const ScalarField u = solve_stationary_bvp(field, bc);
    for (double v : u.values) {
        CHECK(v >= 0.0 - 1e-10);
        CHECK(v <= 1.0 + 1e-10);
    }
}

TEST_CASE("steady-state flux balance: Robin outflow equals Dirichlet inflow") {
    StructuredGrid g{2, {1, 1, 1}, {18, 10, 1}};
    RandomStream rng(4);
    TensorField field;
    field.grid = g;
    field.tensors.resize(static_cast<size_t>(g.total_cells()));
    for (auto& t : field.tensors) t = SymTensor::isotropic(2, 0.5 + 2.0 * rng.uniform());

    const EstimationBC bc{1.0, 0.0, 1.2};
    const BoundarySetup setup = bc.as_boundary_setup(2);
    SolverControl control;
    control.rel_tol = 1e-12;
    const ScalarField u = solve_stationary_bvp(field, bc, control);

    // Unconstrained assembly: residual at Dirichlet nodes is the discrete
    // boundary reaction; everywhere else it vanishes to solver accuracy.
    BoundarySetup natural = setup;
    natural.at({0, 0}).kind = FaceKind::Natural;
    const DofMap free_dofs = make_dof_map(g, natural);
    const StationarySystem sys =
        assemble_stationary(field, natural, free_dofs, build_pattern(g, free_dofs));
    std::vector<double> residual(static_cast<size_t>(free_dofs.n_eq));
    sys.matrix.matvec(u.values, residual);
    for (size_t i = 0; i < residual.size(); ++i) residual[i] -= sys.rhs[i];

    double inflow = 0;
    for (int j = 0; j <= g.cells[1]; ++j)
        inflow += residual[static_cast<size_t>(g.node_index(0, j))];

    const double u_out = boundary_average(u, {0, 1});
    const double outflow = bc.mass_transfer * (u_out - bc.c1) * g.extent[1];  // |G1| * N_avg
    CHECK(inflow == doctest::Approx(outflow).epsilon(1e-8));
}
