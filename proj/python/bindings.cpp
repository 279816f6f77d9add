#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "effdiff/bvp.hpp"
#include "effdiff/cell_problem.hpp"
#include "effdiff/compare.hpp"
#include "effdiff/layered.hpp"
#include "effdiff/mask.hpp"
#include "effdiff/monte_carlo.hpp"
#include "effdiff/pgm.hpp"
#include "effdiff/rotation.hpp"
#include "effdiff/seeding.hpp"
#include "effdiff/transient.hpp"

#include <utility>
#include <vector>

namespace py = pybind11;
using namespace effdiff;

namespace {

using Rows = std::vector<std::vector<double>>;

Rows matrix_to_rows(const Matrix& m) {
    Rows rows(static_cast<size_t>(m.dim), std::vector<double>(static_cast<size_t>(m.dim)));
    for (int i = 0; i < m.dim; ++i)
        for (int j = 0; j < m.dim; ++j) rows[i][j] = m(i, j);
    return rows;
}

Rows tensor_to_rows(const SymTensor& q) {
    Rows rows(static_cast<size_t>(q.dim), std::vector<double>(static_cast<size_t>(q.dim)));
    for (int i = 0; i < q.dim; ++i)
        for (int j = 0; j < q.dim; ++j) rows[i][j] = q(i, j);
    return rows;
}

Matrix rows_to_matrix(const Rows& rows) {
    const int dim = static_cast<int>(rows.size());
    if (dim != 2 && dim != 3) throw std::invalid_argument("matrix must be 2x2 or 3x3");
    Matrix m;
    m.dim = dim;
    for (int i = 0; i < dim; ++i) {
        if (static_cast<int>(rows[i].size()) != dim)
            throw std::invalid_argument("matrix rows must have matching length");
        for (int j = 0; j < dim; ++j) m.entry(i, j) = rows[i][j];
    }
    return m;
}

SymTensor rows_to_tensor(const Rows& rows) {
    const Matrix m = rows_to_matrix(rows);
    SymTensor q = SymTensor::zero(m.dim);
    for (int i = 0; i < m.dim; ++i)
        for (int j = i; j < m.dim; ++j) {
            if (std::abs(m(i, j) - m(j, i)) > 1e-12 * (1.0 + std::abs(m(i, j))))
                throw std::invalid_argument("tensor must be symmetric");
            q.entry(i, j) = m(i, j);
        }
    return q;
}

SymTensor diag_to_tensor(const std::vector<double>& diag) {
    if (diag.size() == 2) return SymTensor::diag2(diag[0], diag[1]);
    if (diag.size() == 3) return SymTensor::diag3(diag[0], diag[1], diag[2]);
    throw std::invalid_argument("diagonal must have 2 or 3 entries");
}

SymTensor phase2_tensor(double d2n, double d2t) {
    return SymTensor::diag2(d2n, d2t > 0 ? d2t : d2n);
}

EstimationBC make_bc(const PhaseMask& mask, double d1, double d2n, double kp, double c0,
                     double c1, double mass_transfer) {
    if (mass_transfer > 0) return {c0, c1, mass_transfer};
    const double p2 = mask.lipid_fraction();
    const std::vector<std::pair<double, double>> profile{{1.0 - p2, d1}, {p2, d2n / kp}};
    const double length = mask.width * mask.pixel_size;
    return {c0, c1, 0.5 * harmonic_mean_profile(profile) / length};
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Effective diffusivities of layered and randomly oriented anisotropic media";
    m.attr("__version__") = "0.1.0";

    py::register_exception<SolveError>(m, "SolveFailure");
    py::register_exception<PgmParseError>(m, "PgmParseFailure");

    m.def("trial_seed", &trial_seed, py::arg("master_seed"), py::arg("trial_index"),
          "Deterministic, collision-resistant per-trial seed.");

    py::class_<RandomStream>(m, "RandomStream")
        .def(py::init<std::uint64_t>(), py::arg("seed"))
        .def("uniform", &RandomStream::uniform, "Uniform deviate in [0, 1).");

    m.def(
        "rotation_matrix_2d",
        [](double phi) { return matrix_to_rows(rotation_matrix(Rotation2{phi})); },
        py::arg("phi"));
    m.def(
        "rotation_matrix_3d",
        [](double alpha, double beta, double gamma) {
            return matrix_to_rows(rotation_matrix(Rotation3{alpha, beta, gamma}));
        },
        py::arg("alpha"), py::arg("beta"), py::arg("gamma"),
        "Euler z-x-z composition R3(gamma) R1(beta) R3(alpha).");
    m.def(
        "sample_rotation_2d",
        [](RandomStream& rng) { return sample_rotation_2d(rng).phi; }, py::arg("rng"),
        "Haar-uniform angle in [0, 2*pi).");
    m.def(
        "sample_rotation_3d",
        [](RandomStream& rng) {
            const Rotation3 rot = sample_rotation_3d(rng);
            return py::make_tuple(rot.alpha, rot.beta, rot.gamma);
        },
        py::arg("rng"), "Haar-uniform Euler angles (alpha, beta, gamma).");
    m.def(
        "rotate_tensor",
        [](const Rows& t, const Rows& q) {
            return tensor_to_rows(rotate_tensor(rows_to_matrix(t), rows_to_tensor(q)));
        },
        py::arg("t"), py::arg("q"), "Conjugation T Q T^t.");

    m.def(
        "layered_effective_tensor",
        [](double p1, const std::vector<double>& d1, const std::vector<double>& d2, double kp,
           int normal_axis) {
            LayeredMedium medium;
            medium.thickness_plus = p1;
            medium.thickness_minus = 1.0 - p1;
            medium.d_plus = diag_to_tensor(d1);
            medium.d_minus = diag_to_tensor(d2);
            medium.partition_coefficient = kp;
            medium.normal_axis = normal_axis;
            const SymTensor eff = layered_effective_tensor(medium);
            std::vector<double> diag(static_cast<size_t>(eff.dim));
            for (int i = 0; i < eff.dim; ++i) diag[static_cast<size_t>(i)] = eff(i, i);
            return diag;
        },
        py::arg("p1"), py::arg("d1"), py::arg("d2"), py::arg("kp") = 1.0,
        py::arg("normal_axis") = 0,
        "Diagonal of the closed-form layered effective tensor (d2 is transformed by 1/kp).");

    m.def(
        "harmonic_mean_profile",
        [](const std::vector<std::pair<double, double>>& segments) {
            return harmonic_mean_profile(segments);
        },
        py::arg("segments"), "Length-weighted harmonic mean of (length, diffusivity) segments.");

    m.def(
        "transform_partition",
        [](const std::vector<double>& d1, const std::vector<double>& d2, double r1, double r2,
           double f1, double f2, double kp) {
            TwoPhaseCoefficients c;
            c.d1 = diag_to_tensor(d1);
            c.d2 = diag_to_tensor(d2);
            c.r1 = r1;
            c.r2 = r2;
            c.f1 = f1;
            c.f2 = f2;
            c.partition_coefficient = kp;
            const TransformedCoefficients out = transform_partition(c);
            auto region = [](const SingleFieldCoefficients& r) {
                py::dict d;
                d["d"] = tensor_to_rows(r.d);
                d["sigma"] = r.sigma;
                d["r"] = r.r;
                d["f"] = r.f;
                return d;
            };
            return py::make_tuple(region(out.region1), region(out.region2));
        },
        py::arg("d1"), py::arg("d2"), py::arg("r1") = 0.0, py::arg("r2") = 0.0,
        py::arg("f1") = 0.0, py::arg("f2") = 0.0, py::arg("kp") = 1.0,
        "Single-field coefficients of both regions after removing the partition jump.");

    m.def(
        "geometric_mean_reference",
        [](const std::vector<double>& q) { return geometric_mean_reference(diag_to_tensor(q)); },
        py::arg("q"), "2D Haar limit sqrt(det Q).");

    py::class_<PhaseMask>(m, "PhaseMask")
        .def(py::init<>())
        .def_readwrite("width", &PhaseMask::width)
        .def_readwrite("height", &PhaseMask::height)
        .def_readwrite("pixel_size", &PhaseMask::pixel_size)
        .def_readwrite("labels", &PhaseMask::labels)
        .def("lipid_fraction", &PhaseMask::lipid_fraction)
        .def("__repr__", [](const PhaseMask& mask) {
            return "<PhaseMask " + std::to_string(mask.width) + "x" +
                   std::to_string(mask.height) + ">";
        });

    m.def(
        "synth_layered_mask",
        [](double p2, int layers, double wobble, double gaps, int width, int height,
           double pixel_size, std::uint64_t seed) {
            SynthLayerSpec spec;
            spec.lipid_fraction = p2;
            spec.layer_count = layers;
            spec.wobble = wobble;
            spec.gap_density = gaps;
            spec.width = width;
            spec.height = height;
            spec.pixel_size = pixel_size;
            spec.seed = seed;
            return synth_layered_mask(spec);
        },
        py::arg("p2"), py::arg("layers") = 4, py::arg("wobble") = 0.0, py::arg("gaps") = 0.0,
        py::arg("width") = 256, py::arg("height") = 64, py::arg("pixel_size") = 1.0,
        py::arg("seed") = 0);

    m.def(
        "read_pgm",
        [](const std::string& path, int threshold, double pixel_size) {
            MaskReadResult res = read_pgm_mask(path, threshold, pixel_size);
            return py::make_tuple(std::move(res.mask), res.warning);
        },
        py::arg("path"), py::arg("threshold") = -1, py::arg("pixel_size") = 1.0,
        "Returns (mask, warning); warning is empty unless grayscale content was thresholded.");
    m.def("write_pgm", &write_pgm_mask, py::arg("mask"), py::arg("path"),
          py::arg("binary") = true);

    m.def(
        "estimate_from_mask",
        [](const PhaseMask& mask, double d1, double d2n, double d2t, double kp, double c0,
           double c1, double mass_transfer, double tol) {
            const TensorField field =
                ingest_mask(mask, SymTensor::isotropic(2, d1), phase2_tensor(d2n, d2t), kp);
            SolverControl control;
            control.rel_tol = tol;
            return estimate_effective_diffusivity(
                field, make_bc(mask, d1, d2n, kp, c0, c1, mass_transfer), control);
        },
        py::arg("mask"), py::arg("d1"), py::arg("d2n"), py::arg("d2t") = 0.0,
        py::arg("kp") = 1.0, py::arg("c0") = 1.0, py::arg("c1") = 0.0,
        py::arg("mass_transfer") = 0.0, py::arg("tol") = 1e-10,
        "Effective diffusivity in x from the stationary estimation protocol.");

    m.def(
        "cell_effective_from_mask",
        [](const PhaseMask& mask, double d1, double d2n, double d2t, double kp, double tol) {
            const TensorField field =
                ingest_mask(mask, SymTensor::isotropic(2, d1), phase2_tensor(d2n, d2t), kp);
            SolverControl control;
            control.rel_tol = tol;
            return tensor_to_rows(solve_cell_problem(field, control).effective);
        },
        py::arg("mask"), py::arg("d1"), py::arg("d2n"), py::arg("d2t") = 0.0,
        py::arg("kp") = 1.0, py::arg("tol") = 1e-10,
        "Effective tensor of the periodic cell problem on the mask geometry.");

    py::class_<McStatistics>(m, "McStatistics")
        .def_readonly("values", &McStatistics::values)
        .def_readonly("seeds", &McStatistics::seeds)
        .def_readonly("mean", &McStatistics::mean)
        .def_readonly("std_dev", &McStatistics::std_dev)
        .def_readonly("std_error", &McStatistics::std_error)
        .def("csv", [](const McStatistics& stats) { return campaign_csv(stats); })
        .def("__repr__", [](const McStatistics& stats) {
            return "<McStatistics mean=" + std::to_string(stats.mean) + " std=" +
                   std::to_string(stats.std_dev) + " trials=" +
                   std::to_string(stats.values.size()) + ">";
        });

    m.def(
        "monte_carlo",
        [](int dim, int n, int trials, const std::vector<double>& q, std::uint64_t seed,
           int m_refine, int threads, double tol) {
            McConfig config;
            config.dim = dim;
            config.subcells = n;
            config.trials = trials;
            config.q = diag_to_tensor(q);
            config.master_seed = seed;
            config.refine = m_refine;
            config.threads = threads;
            config.control.rel_tol = tol;
            return monte_carlo(config);
        },
        py::arg("dim"), py::arg("n"), py::arg("trials"), py::arg("q"), py::arg("seed") = 0,
        py::arg("m_refine") = 0, py::arg("threads") = 1, py::arg("tol") = 1e-10,
        py::call_guard<py::gil_scoped_release>(),
        "Monte Carlo campaign of effective-diffusivity estimates on the unit square/cube.");

    m.def(
        "transient_comparison_from_mask",
        [](const PhaseMask& mask, double d1, double d2n, double d2t, double kp, double d_eff,
           double c0, double c1, double mass_transfer, double t_end, double dt, double amplitude,
           double x_scale, double tol) {
            const TensorField field =
                ingest_mask(mask, SymTensor::isotropic(2, d1), phase2_tensor(d2n, d2t), kp);
            const EstimationBC bc = make_bc(mask, d1, d2n, kp, c0, c1, mass_transfer);
            if (d_eff <= 0) d_eff = estimate_effective_diffusivity(field, bc);
            TransientOptions options;
            options.t_end = t_end;
            options.dt = dt;
            options.control.rel_tol = tol;
            const double scale = x_scale > 0 ? x_scale : 0.5 * field.grid.extent[0];
            const ScalarField initial = gaussian_profile(field.grid, amplitude, scale);
            const TransientComparison cmp =
                transient_comparison(field, d_eff, initial, bc, options);
            py::dict out;
            out["times"] = cmp.detailed.times;
            out["flux_detailed"] = cmp.detailed.flux;
            out["flux_homogenized"] = cmp.homogenized.flux;
            out["rel_l2"] = cmp.rel_l2;
            out["rel_max"] = cmp.rel_max;
            out["d_eff"] = d_eff;
            return out;
        },
        py::arg("mask"), py::arg("d1"), py::arg("d2n"), py::arg("d2t") = 0.0,
        py::arg("kp") = 1.0, py::arg("d_eff") = 0.0, py::arg("c0") = 1.0, py::arg("c1") = 0.0,
        py::arg("mass_transfer") = 0.0, py::arg("t_end") = 30.0, py::arg("dt") = 0.25,
        py::arg("amplitude") = 1e-6, py::arg("x_scale") = 0.0, py::arg("tol") = 1e-12,
        "Detailed vs homogenized flux histories and their discrepancy metrics.");
}
