#include "effdiff/transient.hpp"

#include "effdiff/compare.hpp"
#include "effdiff/seeding.hpp"

#include <doctest.h>

#include <cmath>

using namespace effdiff;

namespace {

TensorField two_phase_strip_field(const StructuredGrid& g, double d1, double d2,
                                  double sigma2, int period) {
    TensorField f;
    f.grid = g;
    f.tensors.resize(static_cast<size_t>(g.total_cells()));
    f.sigma.resize(static_cast<size_t>(g.total_cells()));
    for (int j = 0; j < g.cells[1]; ++j)
        for (int i = 0; i < g.cells[0]; ++i) {
            const bool lipid = (i % period) == period - 1;
            const auto c = static_cast<size_t>(g.cell_index(i, j));
            f.tensors[c] = SymTensor::isotropic(2, lipid ? d2 : d1);
            f.sigma[c] = lipid ? sigma2 : 1.0;
        }
    return f;
}

}  // namespace

TEST_CASE("insulated transient conserves the capacity-weighted mass") {
    StructuredGrid g{2, {1, 1, 1}, {16, 16, 1}};
    const TensorField field = two_phase_strip_field(g, 1.0, 10.0, 4.0, 4);
    const ScalarField initial = gaussian_profile(g, 1.0, 0.4);

    TransientOptions options;
    options.t_end = 0.05;
    options.dt = 0.002;
    const TransientResult res =
        solve_transient(field, initial, EstimationBC::insulated(), options);

    const double m0 = res.capacity_mass.front();
    REQUIRE(m0 > 0);
    for (double m : res.capacity_mass) CHECK(std::abs(m - m0) <= 1e-10 * m0);
    for (double f : res.flux.flux) CHECK(f == 0.0);
}

TEST_CASE("null data stays null") {
    StructuredGrid g{2, {1, 1, 1}, {8, 8, 1}};
    const TensorField field = TensorField::uniform(g, SymTensor::isotropic(2, 2.0));
    const ScalarField initial = ScalarField::zero(g);
    TransientOptions options;
    options.t_end = 0.1;
    options.dt = 0.01;
    const TransientResult res = solve_transient(field, initial, {0.0, 0.0, 1.0}, options);
    for (double f : res.flux.flux) CHECK(f == 0.0);
    for (double v : res.final_state.values) CHECK(v == 0.0);
}

TEST_CASE("flux history converges to the stationary estimate") {
    StructuredGrid g{2, {1.0, 0.25, 1}, {32, 4, 1}};
    const TensorField field = two_phase_strip_field(g, 1.0, 20.0, 1.0, 8);
    const EstimationBC bc{1.0, 0.0, 1.0};

    const ScalarField steady = solve_stationary_bvp(field, bc);
    const double steady_flux = bc.mass_transfer * (boundary_average(steady, {0, 1}) - bc.c1);

    // t_end >> L^2 * max(sigma) / min(d) = 1
    TransientOptions options;
    options.t_end = 8.0;
    options.dt = 0.05;
    const TransientResult res = solve_transient(field, ScalarField::zero(g), bc, options);
    CHECK(res.flux.flux.back() == doctest::Approx(steady_flux).epsilon(1e-3));

    REQUIRE(res.flux.times.size() == res.flux.flux.size());
    for (size_t i = 1; i < res.flux.times.size(); ++i)
        CHECK(res.flux.times[i] > res.flux.times[i - 1]);
}

TEST_CASE("transient comparison of a field against itself is exact") {
    StructuredGrid g{2, {1.0, 0.5, 1}, {16, 8, 1}};
    const double d = 2.5;
    const TensorField field = TensorField::uniform(g, SymTensor::isotropic(2, d));
    const ScalarField initial = gaussian_profile(g, 1e-3, 0.5);
    TransientOptions options;
    options.t_end = 0.4;
    options.dt = 0.02;
    const TransientComparison cmp =
        transient_comparison(field, d, initial, {1.0, 0.0, 1.0}, options);
    CHECK(cmp.rel_l2 <= 1e-9);
    CHECK(cmp.rel_max <= 1e-9);
}

TEST_CASE("zero initial condition and zero boundary data give identical zero histories") {
    StructuredGrid g{2, {1, 1, 1}, {8, 8, 1}};
    const TensorField field = TensorField::uniform(g, SymTensor::isotropic(2, 1.0));
    TransientOptions options;
    options.t_end = 0.1;
    options.dt = 0.02;
    const TransientComparison cmp =
        transient_comparison(field, 1.0, ScalarField::zero(g), {0.0, 0.0, 1.0}, options);
    for (double f : cmp.detailed.flux) CHECK(f == 0.0);
    for (double f : cmp.homogenized.flux) CHECK(f == 0.0);
    CHECK(cmp.rel_l2 == 0.0);
}
