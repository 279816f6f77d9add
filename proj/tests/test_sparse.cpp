#include "effdiff/assembly.hpp"
#include "effdiff/bvp.hpp"
#include "effdiff/seeding.hpp"
#include "effdiff/sparse.hpp"

#include "test_oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <vector>

using namespace effdiff;

namespace {

TensorField random_isotropic_field(const StructuredGrid& g, std::uint64_t seed) {
    RandomStream rng(seed);
    TensorField f;
    f.grid = g;
    f.tensors.resize(static_cast<size_t>(g.total_cells()));
    for (auto& t : f.tensors) t = SymTensor::isotropic(g.dim, 0.5 + 4.0 * rng.uniform());
    return f;
}

}  // namespace

TEST_CASE("assembled matrix is symmetric by construction") {
    StructuredGrid g{2, {1, 1, 1}, {7, 5, 1}};
    const TensorField field = random_isotropic_field(g, 5);
    EstimationBC bc{1.0, 0.0, 0.7};
    const BoundarySetup setup = bc.as_boundary_setup(2);
    const DofMap dofs = make_dof_map(g, setup);
    const StationarySystem sys = assemble_stationary(field, setup, dofs, build_pattern(g, dofs));
    CHECK(sys.matrix.max_asymmetry() == 0.0);
}

TEST_CASE("CG matches a dense direct solve on a small assembly") {
    StructuredGrid g{2, {1.0, 0.8, 1}, {14, 14, 1}};  // 225 nodes, ~210 unknowns
    const TensorField field = random_isotropic_field(g, 17);
    EstimationBC bc{1.0, 0.2, 1.3};
    const BoundarySetup setup = bc.as_boundary_setup(2);
    const DofMap dofs = make_dof_map(g, setup);
    const StationarySystem sys = assemble_stationary(field, setup, dofs, build_pattern(g, dofs));

    const int n = dofs.n_eq;
    REQUIRE(n <= 500);
    std::vector<double> dense(static_cast<size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i)
        for (int k = sys.matrix.pattern->row_ptr[i]; k < sys.matrix.pattern->row_ptr[i + 1]; ++k)
            dense[static_cast<size_t>(i) * n + sys.matrix.pattern->col[k]] =
                sys.matrix.values[static_cast<size_t>(k)];

    const std::vector<double> x_ref = oracle::dense_solve(dense, sys.rhs);

    std::vector<double> x(static_cast<size_t>(n), 0.0);
    SolverControl control;
    control.rel_tol = 1e-12;
    cg_solve(sys.matrix, sys.rhs, x, control, 2);

    double scale = 0;
    for (double v : x_ref) scale = std::max(scale, std::abs(v));
    for (int i = 0; i < n; ++i) CHECK(std::abs(x[i] - x_ref[i]) <= 1e-9 * scale);
}

TEST_CASE("1x1-cell grid with Dirichlet on both ends reproduces the interpolant") {
    StructuredGrid g{2, {1, 1, 1}, {1, 1, 1}};
    const TensorField field = TensorField::uniform(g, SymTensor::isotropic(2, 2.5));
    BoundarySetup setup;
    setup.at({0, 0}) = {FaceKind::Dirichlet, 1.0, 0.0};
    setup.at({0, 1}) = {FaceKind::Dirichlet, 0.25, 0.0};
    const ScalarField u = solve_stationary(field, setup);
    // all four nodes are constrained; the solve is the pure lift
    CHECK(u.values[0] == 1.0);
    CHECK(u.values[1] == 0.25);
    CHECK(u.values[2] == 1.0);
    CHECK(u.values[3] == 0.25);
}

TEST_CASE("solver failure carries the achieved residual") {
    StructuredGrid g{2, {1, 1, 1}, {24, 24, 1}};
    const TensorField field = random_isotropic_field(g, 3);
    EstimationBC bc{1.0, 0.0, 0.9};
    const BoundarySetup setup = bc.as_boundary_setup(2);
    const DofMap dofs = make_dof_map(g, setup);
    const StationarySystem sys = assemble_stationary(field, setup, dofs, build_pattern(g, dofs));
    std::vector<double> x(static_cast<size_t>(dofs.n_eq), 0.0);
    SolverControl starved;
    starved.max_iterations = 2;
    try {
        cg_solve(sys.matrix, sys.rhs, x, starved, 2);
        FAIL("expected SolveError");
    } catch (const SolveError& err) {
        CHECK(err.rel_residual > 0);
        CHECK(err.iterations <= 2 * 3);  // a couple of restarts at most
    }
}
