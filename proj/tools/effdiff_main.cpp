// effdiff: effective-diffusivity homogenization toolkit.
//
// Subcommands: layered, estimate, cellprob, mc2d, mc3d, transient.
// Every artifact embeds the resolved configuration as `# key=value` lines;
// execution-only settings (thread count, output paths) are excluded so reruns
// with the same seed are byte-identical.

#include <CLI11.hpp>

#include "effdiff/bvp.hpp"
#include "effdiff/cell_problem.hpp"
#include "effdiff/compare.hpp"
#include "effdiff/layered.hpp"
#include "effdiff/mask.hpp"
#include "effdiff/monte_carlo.hpp"
#include "effdiff/pgm.hpp"
#include "effdiff/transient.hpp"

#include <cstdio>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

using namespace effdiff;

namespace {

std::string g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string g5(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.5g", v);
    return buf;
}

void write_artifact(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file " + path);
    out << content;
    if (!out) throw std::runtime_error("write failed for " + path);
}

// Config echo block shared by the non-campaign artifacts.
class ConfigEcho {
public:
    void add(const std::string& key, const std::string& value) {
        lines_ += "# " + key + "=" + value + "\n";
    }
    void add(const std::string& key, double value) { add(key, g17(value)); }
    void add(const std::string& key, int value) { add(key, std::to_string(value)); }
    const std::string& str() const { return lines_; }

private:
    std::string lines_;
};

// --- shared geometry options (estimate / transient) --------------------------

struct GeometryOptions {
    std::string mask_path;
    int threshold = -1;
    double pixel_size = 0;  // 0 = derive (mask: 1.0; synthetic: lx / res_x)
    // synthetic layers
    double p2 = 0.1878;
    int layers = 4;
    double wobble = 0;
    double gaps = 0;
    int res_x = 256;
    int res_y = 16;
    std::uint64_t mask_seed = 0;
    double lx = 4.359e-7;  // physical length when synthesizing
    std::string save_mask;
    // phases
    double d1 = 1e-14;
    double d2n = 1e-12;
    double d2t = 0;  // 0 = same as d2n
    double kp = 1.0;
};

void add_geometry_options(CLI::App* cmd, GeometryOptions& geo) {
    cmd->add_option("--mask", geo.mask_path, "input phase mask (PGM, dark = lipid)");
    cmd->add_option("--threshold", geo.threshold,
                    "mask threshold, 0..255 (-1 = midpoint of maxval)");
    cmd->add_option("--pixel-size", geo.pixel_size,
                    "pixel edge length (0 = lx / res-x for synthetic, 1.0 for mask input)")
        ->check(CLI::NonNegativeNumber);
    cmd->add_option("--p2", geo.p2, "synthetic lipid volume fraction")
        ->check(CLI::Range(0.0, 1.0));
    cmd->add_option("--layers", geo.layers, "synthetic lipid layer count")
        ->check(CLI::Range(1, 1000000));
    cmd->add_option("--wobble", geo.wobble, "layer centerline wobble (fraction of pitch)")
        ->check(CLI::NonNegativeNumber);
    cmd->add_option("--gaps", geo.gaps, "expected short circuits per layer")
        ->check(CLI::NonNegativeNumber);
    cmd->add_option("--res-x", geo.res_x, "synthetic raster width")->check(CLI::Range(1, 1000000));
    cmd->add_option("--res-y", geo.res_y, "synthetic raster height")->check(CLI::Range(1, 1000000));
    cmd->add_option("--mask-seed", geo.mask_seed, "seed for synthetic wobble/gap placement");
    cmd->add_option("--lx", geo.lx, "physical domain length for synthetic geometry")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--save-mask", geo.save_mask, "write the phase mask used to this PGM path");
    cmd->add_option("--d1", geo.d1, "phase-1 (aqueous) isotropic diffusivity")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--d2n", geo.d2n, "phase-2 (lipid) normal diffusivity")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--d2t", geo.d2t, "phase-2 tangential diffusivity (default: --d2n)")
        ->check(CLI::NonNegativeNumber);
    cmd->add_option("--kp", geo.kp, "partition coefficient K_p")->check(CLI::PositiveNumber);
}

PhaseMask load_geometry(const GeometryOptions& geo, ConfigEcho& echo) {
    PhaseMask mask;
    if (!geo.mask_path.empty()) {
        MaskReadResult read = read_pgm_mask(geo.mask_path, geo.threshold,
                                            geo.pixel_size > 0 ? geo.pixel_size : 1.0);
        if (!read.warning.empty()) std::fprintf(stderr, "warning: %s\n", read.warning.c_str());
        mask = std::move(read.mask);
        echo.add("mask", geo.mask_path);
        echo.add("threshold", geo.threshold);
    } else {
        SynthLayerSpec spec;
        spec.lipid_fraction = geo.p2;
        spec.layer_count = geo.layers;
        spec.wobble = geo.wobble;
        spec.gap_density = geo.gaps;
        spec.width = geo.res_x;
        spec.height = geo.res_y;
        spec.pixel_size = geo.pixel_size > 0 ? geo.pixel_size : geo.lx / geo.res_x;
        spec.seed = geo.mask_seed;
        mask = synth_layered_mask(spec);
        echo.add("p2", geo.p2);
        echo.add("layers", geo.layers);
        echo.add("wobble", geo.wobble);
        echo.add("gaps", geo.gaps);
        echo.add("res_x", geo.res_x);
        echo.add("res_y", geo.res_y);
        echo.add("mask_seed", std::to_string(geo.mask_seed));
    }
    echo.add("pixel_size", mask.pixel_size);
    echo.add("d1", geo.d1);
    echo.add("d2n", geo.d2n);
    echo.add("d2t", geo.d2t > 0 ? geo.d2t : geo.d2n);
    echo.add("kp", geo.kp);
    if (!geo.save_mask.empty()) write_pgm_mask(mask, geo.save_mask);
    return mask;
}

TensorField geometry_field(const GeometryOptions& geo, const PhaseMask& mask) {
    const double d2t = geo.d2t > 0 ? geo.d2t : geo.d2n;
    return ingest_mask(mask, SymTensor::isotropic(2, geo.d1), SymTensor::diag2(geo.d2n, d2t),
                       geo.kp);
}

// Default mass transfer for mask-based estimates: M = 0.5 * d_ref / L with
// d_ref the harmonic mean of the transformed normal diffusivities at the
// realized volume fractions.
double default_mass_transfer(const GeometryOptions& geo, const PhaseMask& mask, double length) {
    const double p2 = mask.lipid_fraction();
    const std::vector<std::pair<double, double>> profile{{1.0 - p2, geo.d1},
                                                         {p2, geo.d2n / geo.kp}};
    return 0.5 * harmonic_mean_profile(profile) / length;
}

// --- subcommand runners -------------------------------------------------------

struct LayeredArgs {
    double p1 = 0;
    double d1 = 0, d1t = 0;
    double d2n = 0, d2t = 0;
    double kp = 1.0;
    std::string out;
};

int run_layered(const LayeredArgs& args) {
    LayeredMedium medium;
    medium.thickness_plus = args.p1;
    medium.thickness_minus = 1.0 - args.p1;
    medium.d_plus = SymTensor::diag2(args.d1, args.d1t > 0 ? args.d1t : args.d1);
    medium.d_minus = SymTensor::diag2(args.d2n, args.d2t > 0 ? args.d2t : args.d2n);
    medium.partition_coefficient = args.kp;
    const SymTensor eff = layered_effective_tensor(medium);

    std::printf("layered effective tensor (layers normal to x):\n");
    std::printf("  d_eff,normal     = %s\n", g5(eff(0, 0)).c_str());
    std::printf("  d_eff,tangential = %s\n", g5(eff(1, 1)).c_str());

    if (!args.out.empty()) {
        ConfigEcho echo;
        echo.add("subcommand", "layered");
        echo.add("p1", args.p1);
        echo.add("d1", args.d1);
        echo.add("d1t", args.d1t > 0 ? args.d1t : args.d1);
        echo.add("d2n", args.d2n);
        echo.add("d2t", args.d2t > 0 ? args.d2t : args.d2n);
        echo.add("kp", args.kp);
        write_artifact(args.out, echo.str() + "d_eff_normal,d_eff_tangential\n" +
                                     g17(eff(0, 0)) + "," + g17(eff(1, 1)) + "\n");
    }
    return 0;
}

struct EstimateArgs {
    GeometryOptions geo;
    double c0 = 1.0, c1 = 0.0, mass_transfer = 0.0;
    double tol = 1e-10;
    std::string out;
};

int run_estimate(const EstimateArgs& args) {
    ConfigEcho echo;
    echo.add("subcommand", "estimate");
    const PhaseMask mask = load_geometry(args.geo, echo);
    const TensorField field = geometry_field(args.geo, mask);
    const double length = field.grid.extent[0];

    EstimationBC bc{args.c0, args.c1,
                    args.mass_transfer > 0 ? args.mass_transfer
                                           : default_mass_transfer(args.geo, mask, length)};
    SolverControl control;
    control.rel_tol = args.tol;
    const double estimate = estimate_effective_diffusivity(field, bc, control);

    const double p2 = mask.lipid_fraction();
    const std::vector<std::pair<double, double>> profile{
        {1.0 - p2, args.geo.d1}, {p2, args.geo.d2n / args.geo.kp}};
    const double harmonic = harmonic_mean_profile(profile);

    std::printf("estimated d_eff,11 = %s\n", g5(estimate).c_str());
    std::printf("  realized lipid fraction = %s\n", g5(p2).c_str());
    std::printf("  harmonic-mean reference (perfect layers) = %s\n", g5(harmonic).c_str());
    std::printf("  relative difference = %s\n", g5(estimate / harmonic - 1.0).c_str());

    if (!args.out.empty()) {
        echo.add("c0", bc.c0);
        echo.add("c1", bc.c1);
        echo.add("mass_transfer", bc.mass_transfer);
        echo.add("solver_rel_tol", args.tol);
        write_artifact(args.out,
                       echo.str() + "d_eff,harmonic_reference,lipid_fraction\n" + g17(estimate) +
                           "," + g17(harmonic) + "," + g17(p2) + "\n");
    }
    return 0;
}

struct CellProbArgs {
    std::string mode = "layered";  // layered | checker | mask
    GeometryOptions geo;
    double checker_a = 1.0, checker_b = 4.0;
    int cells = 32;
    double tol = 1e-10;
    std::string out;
};

int run_cellprob(const CellProbArgs& args) {
    ConfigEcho echo;
    echo.add("subcommand", "cellprob");
    echo.add("mode", args.mode);

    TensorField field;
    std::optional<double> reference;
    if (args.mode == "checker") {
        const int half = args.cells / 2;
        if (half < 1) throw CLI::ValidationError("--cells", "needs at least 2 cells");
        StructuredGrid g{2, {1, 1, 1}, {2 * half, 2 * half, 1}};
        field.grid = g;
        field.tensors.resize(static_cast<size_t>(g.total_cells()));
        for (int j = 0; j < g.cells[1]; ++j)
            for (int i = 0; i < g.cells[0]; ++i)
                field.tensors[static_cast<size_t>(g.cell_index(i, j))] = SymTensor::isotropic(
                    2, ((i / half) + (j / half)) % 2 ? args.checker_b : args.checker_a);
        reference = std::sqrt(args.checker_a * args.checker_b);
        echo.add("phase_a", args.checker_a);
        echo.add("phase_b", args.checker_b);
        echo.add("cells", 2 * half);
    } else if (args.mode == "layered") {
        const int split = static_cast<int>(std::lround((1.0 - args.geo.p2) * args.cells));
        if (split < 1 || split >= args.cells)
            throw CLI::ValidationError("--cells", "cannot realize the volume fraction");
        StructuredGrid g{2, {1, 1, 1}, {args.cells, args.cells, 1}};
        field.grid = g;
        const double d2t = args.geo.d2t > 0 ? args.geo.d2t : args.geo.d2n;
        const SymTensor d1 = SymTensor::isotropic(2, args.geo.d1);
        const SymTensor d2 =
            SymTensor::diag2(args.geo.d2n, d2t) * (1.0 / args.geo.kp);
        field.tensors.resize(static_cast<size_t>(g.total_cells()));
        for (int j = 0; j < g.cells[1]; ++j)
            for (int i = 0; i < g.cells[0]; ++i)
                field.tensors[static_cast<size_t>(g.cell_index(i, j))] = i < split ? d1 : d2;

        LayeredMedium medium;
        medium.thickness_plus = static_cast<double>(split) / args.cells;
        medium.thickness_minus = 1.0 - medium.thickness_plus;
        medium.d_plus = d1;
        medium.d_minus = SymTensor::diag2(args.geo.d2n, d2t);
        medium.partition_coefficient = args.geo.kp;
        reference = layered_effective_tensor(medium)(0, 0);
        echo.add("p2_realized", medium.thickness_minus);
        echo.add("d1", args.geo.d1);
        echo.add("d2n", args.geo.d2n);
        echo.add("d2t", d2t);
        echo.add("kp", args.geo.kp);
        echo.add("cells", args.cells);
    } else if (args.mode == "mask") {
        const PhaseMask mask = load_geometry(args.geo, echo);
        field = geometry_field(args.geo, mask);
    } else {
        throw CLI::ValidationError("--mode", "must be layered, checker or mask");
    }

    SolverControl control;
    control.rel_tol = args.tol;
    const CellProblemResult res = solve_cell_problem(field, control);

    std::printf("cell-problem effective tensor:\n");
    for (int i = 0; i < field.grid.dim; ++i) {
        std::printf(" ");
        for (int j = 0; j < field.grid.dim; ++j)
            std::printf(" %14s", g5(res.effective(i, j)).c_str());
        std::printf("\n");
    }
    if (reference)
        std::printf("  reference (analytic) = %s, relative difference %s\n",
                    g5(*reference).c_str(),
                    g5(res.effective(0, 0) / *reference - 1.0).c_str());

    if (!args.out.empty()) {
        echo.add("solver_rel_tol", args.tol);
        std::string body = "entry,value\n";
        for (int i = 0; i < field.grid.dim; ++i)
            for (int j = 0; j < field.grid.dim; ++j)
                body += "d_eff_" + std::to_string(i + 1) + std::to_string(j + 1) + "," +
                        g17(res.effective(i, j)) + "\n";
        if (reference) body += "reference," + g17(*reference) + "\n";
        write_artifact(args.out, echo.str() + body);
    }
    return 0;
}

struct McArgs {
    int n = 20;
    int trials = 30;
    std::vector<double> q;
    std::uint64_t seed = 0;
    int m_refine = 0;
    int threads = 0;
    double c0 = 1.0, c1 = 0.0, mass_transfer = 0.0;
    double tol = 1e-10;
    std::string out;
};

int run_mc(int dim, const McArgs& args) {
    McConfig config;
    config.dim = dim;
    config.subcells = args.n;
    config.trials = args.trials;
    std::vector<double> q = args.q;
    if (q.empty()) q = dim == 2 ? std::vector<double>{1.0, 10.0} : std::vector<double>{9, 25, 1};
    if (static_cast<int>(q.size()) != dim)
        throw CLI::ValidationError("--q", "needs " + std::to_string(dim) + " diagonal entries");
    config.q = dim == 2 ? SymTensor::diag2(q[0], q[1]) : SymTensor::diag3(q[0], q[1], q[2]);
    config.master_seed = args.seed;
    config.bc = EstimationBC{args.c0, args.c1, args.mass_transfer};
    config.refine = args.m_refine;
    config.control.rel_tol = args.tol;
    config.threads = args.threads;

    const McStatistics stats = monte_carlo(config);

    std::printf("%dD Monte Carlo: N=%d, trials=%d, m=%d, seed=%llu\n", dim, config.subcells,
                config.trials, config.effective_refine(),
                static_cast<unsigned long long>(config.master_seed));
    std::printf("  mean d_eff = %s\n", g5(stats.mean).c_str());
    std::printf("  sample std = %s  (std. error %s)\n", g5(stats.std_dev).c_str(),
                g5(stats.std_error).c_str());
    if (dim == 2) {
        const double reference = geometric_mean_reference(config.q);
        std::printf("  reference sqrt(det Q) = %s, |mean - ref| = %s\n", g5(reference).c_str(),
                    g5(std::abs(stats.mean - reference)).c_str());
    } else {
        std::printf("  (no analytic 3D reference)\n");
    }

    if (!args.out.empty()) write_artifact(args.out, campaign_csv(stats));
    return 0;
}

struct TransientArgs {
    GeometryOptions geo;
    double c0 = 1.0, c1 = 0.0, mass_transfer = 0.0;
    double d_eff = 0;  // 0 = estimate from the stationary problem
    double t_end = 30.0, dt = 0.125;
    double amplitude = 1e-6, x_scale = 0;
    double tol = 1e-12;
    std::string out;
};

int run_transient(const TransientArgs& args) {
    ConfigEcho echo;
    echo.add("subcommand", "transient");
    const PhaseMask mask = load_geometry(args.geo, echo);
    const TensorField field = geometry_field(args.geo, mask);
    const double length = field.grid.extent[0];

    EstimationBC bc{args.c0, args.c1,
                    args.mass_transfer > 0 ? args.mass_transfer
                                           : default_mass_transfer(args.geo, mask, length)};
    double d_eff = args.d_eff;
    if (d_eff <= 0) d_eff = estimate_effective_diffusivity(field, bc);

    TransientOptions options;
    options.t_end = args.t_end;
    options.dt = args.dt;
    options.control.rel_tol = args.tol;

    const double x_scale = args.x_scale > 0 ? args.x_scale : 0.5 * length;
    const ScalarField initial = gaussian_profile(field.grid, args.amplitude, x_scale);
    const TransientComparison cmp = transient_comparison(field, d_eff, initial, bc, options);

    std::printf("transient comparison (detailed vs homogenized d_eff = %s):\n",
                g5(d_eff).c_str());
    std::printf("  steps = %zu, dt = %s, t_end = %s\n", cmp.detailed.times.size() - 1,
                g5(args.dt).c_str(), g5(args.t_end).c_str());
    std::printf("  relative L2 discrepancy  = %s\n", g5(cmp.rel_l2).c_str());
    std::printf("  relative max discrepancy = %s\n", g5(cmp.rel_max).c_str());

    if (!args.out.empty()) {
        echo.add("c0", bc.c0);
        echo.add("c1", bc.c1);
        echo.add("mass_transfer", bc.mass_transfer);
        echo.add("d_eff_homogenized", d_eff);
        echo.add("t_end", args.t_end);
        echo.add("dt", args.dt);
        echo.add("amplitude", args.amplitude);
        echo.add("x_scale", x_scale);
        echo.add("solver_rel_tol", args.tol);
        std::string body = "time,flux_detailed,flux_homogenized\n";
        for (size_t i = 0; i < cmp.detailed.times.size(); ++i)
            body += g17(cmp.detailed.times[i]) + "," + g17(cmp.detailed.flux[i]) + "," +
                    g17(cmp.homogenized.flux[i]) + "\n";
        write_artifact(args.out, echo.str() + body);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"effdiff: effective diffusivities of layered and randomly oriented media"};
    app.require_subcommand(1);
    app.set_config("--config", "",
                   "key=value configuration file; keys are dotted with the subcommand "
                   "(mc2d.n=20) or grouped under [subcommand] sections. Command-line "
                   "flags override file values.");

    LayeredArgs layered_args;
    auto* layered = app.add_subcommand("layered", "analytic layered homogenization");
    layered->fallthrough();
    layered->add_option("--p1", layered_args.p1, "aqueous volume fraction p1")
        ->required()
        ->check(CLI::Range(0.0, 1.0));
    layered->add_option("--d1", layered_args.d1, "phase-1 normal diffusivity")
        ->required()
        ->check(CLI::PositiveNumber);
    layered->add_option("--d1t", layered_args.d1t, "phase-1 tangential diffusivity (default --d1)")
        ->check(CLI::NonNegativeNumber);
    layered->add_option("--d2n", layered_args.d2n, "phase-2 normal diffusivity")
        ->required()
        ->check(CLI::PositiveNumber);
    layered->add_option("--d2t", layered_args.d2t, "phase-2 tangential diffusivity (default --d2n)")
        ->check(CLI::NonNegativeNumber);
    layered->add_option("--kp", layered_args.kp, "partition coefficient")
        ->check(CLI::PositiveNumber);
    layered->add_option("--out", layered_args.out, "CSV artifact path");

    EstimateArgs estimate_args;
    auto* estimate = app.add_subcommand("estimate", "stationary effective-diffusivity estimate");
    estimate->fallthrough();
    add_geometry_options(estimate, estimate_args.geo);
    estimate->add_option("--c0", estimate_args.c0, "inlet concentration");
    estimate->add_option("--c1", estimate_args.c1, "bulk concentration at the outlet");
    estimate->add_option("--m", estimate_args.mass_transfer,
                         "mass transfer coefficient (0 = auto)")
        ->check(CLI::NonNegativeNumber);
    estimate->add_option("--tol", estimate_args.tol, "linear solver relative tolerance")
        ->check(CLI::PositiveNumber);
    estimate->add_option("--out", estimate_args.out, "CSV artifact path");

    CellProbArgs cellprob_args;
    auto* cellprob = app.add_subcommand("cellprob", "periodic cell problem");
    cellprob->fallthrough();
    cellprob->add_option("--mode", cellprob_args.mode, "layered | checker | mask");
    add_geometry_options(cellprob, cellprob_args.geo);
    cellprob->add_option("--phase-a", cellprob_args.checker_a, "checkerboard phase a")
        ->check(CLI::PositiveNumber);
    cellprob->add_option("--phase-b", cellprob_args.checker_b, "checkerboard phase b")
        ->check(CLI::PositiveNumber);
    cellprob->add_option("--cells", cellprob_args.cells, "cells per axis on the period cell")
        ->check(CLI::Range(2, 1000000));
    cellprob->add_option("--tol", cellprob_args.tol, "linear solver relative tolerance")
        ->check(CLI::PositiveNumber);
    cellprob->add_option("--out", cellprob_args.out, "CSV artifact path");

    McArgs mc2d_args, mc3d_args;
    for (auto [name, dim, args] :
         {std::tuple<const char*, int, McArgs*>{"mc2d", 2, &mc2d_args},
          std::tuple<const char*, int, McArgs*>{"mc3d", 3, &mc3d_args}}) {
        auto* mc = app.add_subcommand(
            name, std::string(name) + ": Monte Carlo campaign over random orientations");
        mc->fallthrough();
        mc->add_option("--n", args->n, "sub-cells per axis")->check(CLI::Range(1, 1000000));
        mc->add_option("--trials", args->trials, "sample size")->check(CLI::Range(1, 1000000));
        mc->add_option("--q", args->q, "diagonal of Q (comma separated)")->delimiter(',');
        mc->add_option("--seed", args->seed, "master seed");
        mc->add_option("--m-refine", args->m_refine, "elements per sub-cell axis (0 = default 3)")
            ->check(CLI::Range(0, 1000));
        mc->add_option("--threads", args->threads, "worker threads (0 = hardware)")
            ->check(CLI::Range(0, 4096));
        mc->add_option("--c0", args->c0, "inlet concentration");
        mc->add_option("--c1", args->c1, "bulk concentration at the outlet");
        mc->add_option("--m", args->mass_transfer, "mass transfer coefficient (0 = auto)")
            ->check(CLI::NonNegativeNumber);
        mc->add_option("--tol", args->tol, "linear solver relative tolerance")
            ->check(CLI::PositiveNumber);
        mc->add_option("--out", args->out, "CSV artifact path");
        (void)dim;
    }

    TransientArgs transient_args;
    auto* transient = app.add_subcommand("transient",
                                         "detailed vs homogenized transient flux comparison");
    transient->fallthrough();
    add_geometry_options(transient, transient_args.geo);
    transient->add_option("--c0", transient_args.c0, "inlet concentration");
    transient->add_option("--c1", transient_args.c1, "bulk concentration at the outlet");
    transient->add_option("--m", transient_args.mass_transfer,
                          "mass transfer coefficient (0 = auto)")
        ->check(CLI::NonNegativeNumber);
    transient->add_option("--deff", transient_args.d_eff,
                          "homogenized diffusivity (0 = stationary estimate)")
        ->check(CLI::NonNegativeNumber);
    transient->add_option("--t-end", transient_args.t_end, "end time")
        ->check(CLI::PositiveNumber);
    transient->add_option("--dt", transient_args.dt, "time step")->check(CLI::PositiveNumber);
    transient->add_option("--amp", transient_args.amplitude, "initial Gaussian amplitude");
    transient->add_option("--x-scale", transient_args.x_scale,
                          "initial Gaussian x scale (0 = half the domain length)")
        ->check(CLI::NonNegativeNumber);
    transient->add_option("--tol", transient_args.tol, "per-step solver relative tolerance")
        ->check(CLI::PositiveNumber);
    transient->add_option("--out", transient_args.out, "CSV artifact path");

    CLI11_PARSE(app, argc, argv);

    try {
        if (layered->parsed()) return run_layered(layered_args);
        if (estimate->parsed()) return run_estimate(estimate_args);
        if (cellprob->parsed()) return run_cellprob(cellprob_args);
        if (app.get_subcommand("mc2d")->parsed()) return run_mc(2, mc2d_args);
        if (app.get_subcommand("mc3d")->parsed()) return run_mc(3, mc3d_args);
        if (transient->parsed()) return run_transient(transient_args);
    } catch (const CLI::Error& err) {
        return app.exit(err);
    } catch (const std::exception& err) {
        std::fprintf(stderr, "error: %s\n", err.what());
        return 1;
    }
    return 0;
}
