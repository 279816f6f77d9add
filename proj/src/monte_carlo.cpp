#include "effdiff/monte_carlo.hpp"

#include "effdiff/rotation.hpp"
#include "effdiff/seeding.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace effdiff {

void McConfig::validate() const {
    if (dim != 2 && dim != 3) throw std::invalid_argument("McConfig: dim must be 2 or 3");
    if (subcells < 1) throw std::invalid_argument("McConfig: need at least one sub-cell");
    if (trials < 1) throw std::invalid_argument("McConfig: need at least one trial");
    if (refine < 0) throw std::invalid_argument("McConfig: refine must be >= 0");
    if (threads < 0) throw std::invalid_argument("McConfig: threads must be >= 0");
    if (q.dim != dim) throw std::invalid_argument("McConfig: q dimension does not match");
    q.validate("McConfig q");
    if (!q.is_diagonal()) throw std::invalid_argument("McConfig: q must be diagonal");
    if (bc.c0 == bc.c1) throw std::invalid_argument("McConfig: c0 must differ from c1");
}

double McConfig::effective_mass_transfer() const {
    if (bc.mass_transfer > 0) return bc.mass_transfer;
    // Default keeps the outflow at the order of magnitude of c0 regardless of
    // the units of q: M = 0.5 * d_ref / L with d_ref the geometric mean of
    // the diagonal and L = 1 (unit cell).
    double g = 1;
    for (int i = 0; i < dim; ++i) g *= q(i, i);
    return 0.5 * std::pow(g, 1.0 / dim);
}

double geometric_mean_reference(const SymTensor& q) {
    if (q.dim != 2) throw std::invalid_argument("geometric_mean_reference: 2D only");
    q.validate("geometric_mean_reference q");
    return std::sqrt(q.det());
}

TensorField build_random_field(const McConfig& config, int trial_index) {
    config.validate();
    if (trial_index < 0) throw std::invalid_argument("build_random_field: trial index < 0");

    const int m = config.effective_refine();
    StructuredGrid grid;
    grid.dim = config.dim;
    for (int a = 0; a < config.dim; ++a) {
        grid.extent[a] = 1.0;
        grid.cells[a] = config.subcells * m;
    }

    TensorField field;
    field.grid = grid;
    field.tensors.resize(static_cast<size_t>(grid.total_cells()));

    RandomStream rng(trial_seed(config.master_seed, static_cast<std::uint64_t>(trial_index)));
    const int n = config.subcells;
    const int nz = config.dim == 3 ? n : 1;
    for (int sk = 0; sk < nz; ++sk)
        for (int sj = 0; sj < n; ++sj)
            for (int si = 0; si < n; ++si) {
                SymTensor cell_tensor;
                if (config.dim == 2) {
                    cell_tensor = rotate_tensor(rotation_matrix(sample_rotation_2d(rng)),
                                                config.q);
                } else {
                    cell_tensor = rotate_tensor(rotation_matrix(sample_rotation_3d(rng)),
                                                config.q);
                }
                const int mz = config.dim == 3 ? m : 1;
                for (int ck = 0; ck < mz; ++ck)
                    for (int cj = 0; cj < m; ++cj)
                        for (int ci = 0; ci < m; ++ci)
                            field.tensors[static_cast<size_t>(grid.cell_index(
                                si * m + ci, sj * m + cj, sk * m + ck))] = cell_tensor;
            }
    return field;
}

void McStatistics::recompute() {
    const auto n = static_cast<double>(values.size());
    double sum = 0;
    for (double v : values) sum += v;
    mean = sum / n;
    double ss = 0;
    for (double v : values) ss += (v - mean) * (v - mean);
    std_dev = n > 1 ? std::sqrt(ss / (n - 1)) : 0.0;
    std_error = std_dev / std::sqrt(n);
}

McStatistics monte_carlo(const McConfig& config) {
    config.validate();

    EstimationBC bc = config.bc;
    bc.mass_transfer = config.effective_mass_transfer();

    // Pattern and dof map are identical for every trial; build them once and
    // share read-only across workers.
    const TensorField probe = build_random_field(config, 0);
    const StationaryProblem problem(probe.grid, bc.as_boundary_setup(config.dim));

    McStatistics stats;
    stats.config = config;
    stats.values.assign(static_cast<size_t>(config.trials), 0.0);
    stats.seeds.resize(static_cast<size_t>(config.trials));
    for (int t = 0; t < config.trials; ++t)
        stats.seeds[static_cast<size_t>(t)] =
            trial_seed(config.master_seed, static_cast<std::uint64_t>(t));

    std::atomic<int> next{0};
    std::mutex failure_mutex;
    std::exception_ptr failure;
    int failed_trial = -1;

    auto worker = [&]() {
        for (;;) {
            if (failure) return;
            const int t = next.fetch_add(1);
            if (t >= config.trials) return;
            try {
                const TensorField field = build_random_field(config, t);
                const ScalarField u = problem.solve(field, config.control);
                stats.values[static_cast<size_t>(t)] =
                    effective_diffusivity_from_solution(u, bc, 1.0);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) {
                    failure = std::current_exception();
                    failed_trial = t;
                }
                return;
            }
        }
    };

    int n_workers = config.threads;
    if (n_workers == 0)
        n_workers = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    n_workers = std::min(n_workers, config.trials);

    if (n_workers <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<size_t>(n_workers));
        for (int w = 0; w < n_workers; ++w) pool.emplace_back(worker);
        for (std::thread& th : pool) th.join();
    }

    if (failure) {
        try {
            std::rethrow_exception(failure);
        } catch (const std::exception& err) {
            throw std::runtime_error("monte_carlo: trial " + std::to_string(failed_trial) +
                                     " failed: " + err.what());
        }
    }

    stats.recompute();
    return stats;
}

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

std::string campaign_csv(const McStatistics& stats) {
    const McConfig& c = stats.config;
    std::string out;
    out += "# effdiff campaign v1\n";
    out += "# dim=" + std::to_string(c.dim) + "\n";
    out += "# subcells=" + std::to_string(c.subcells) + "\n";
    out += "# trials=" + std::to_string(c.trials) + "\n";
    out += "# refine=" + std::to_string(c.effective_refine()) + "\n";
    out += "# q=";
    for (int i = 0; i < c.dim; ++i) out += (i ? "," : "") + fmt(c.q(i, i));
    out += "\n";
    out += "# master_seed=" + std::to_string(c.master_seed) + "\n";
    out += "# c0=" + fmt(c.bc.c0) + "\n";
    out += "# c1=" + fmt(c.bc.c1) + "\n";
    out += "# mass_transfer=" + fmt(c.effective_mass_transfer()) + "\n";
    out += "# solver_rel_tol=" + fmt(c.control.rel_tol) + "\n";
    out += "# solver_max_iter_factor=" + fmt(c.control.max_iter_factor) + "\n";
    out += "trial,seed,d_eff\n";
    for (size_t t = 0; t < stats.values.size(); ++t)
        out += std::to_string(t) + "," + std::to_string(stats.seeds[t]) + "," +
               fmt(stats.values[t]) + "\n";
    out += "summary," + fmt(stats.mean) + "," + fmt(stats.std_dev) + "," +
           fmt(stats.std_error) + "\n";
    return out;
}

}  // namespace effdiff
