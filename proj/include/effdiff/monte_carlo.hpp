#pragma once

#include "effdiff/bvp.hpp"
#include "effdiff/grid.hpp"
#include "effdiff/tensor.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace effdiff {

/// Configuration of one Monte Carlo campaign: the unit square/cube split into
/// subcells^dim equally sized sub-cells, each carrying T Q T^t with T drawn
/// Haar-uniformly, estimated `trials` times.
struct McConfig {
    int dim = 2;
    int subcells = 20;  // N sub-cells per axis
    int trials = 30;
    SymTensor q;  // diagonal reference tensor
    std::uint64_t master_seed = 0;
    EstimationBC bc{1.0, 0.0, 0.0};  // mass_transfer 0 = derive from q
    int refine = 0;                  // elements per sub-cell axis; 0 = default
    SolverControl control;
    int threads = 1;  // execution-only; results are schedule-independent

    int effective_refine() const { return refine > 0 ? refine : 3; }
    double effective_mass_transfer() const;
    void validate() const;
};

/// Haar limit of the 2D problem: the geometric mean of Q's eigenvalues.
double geometric_mean_reference(const SymTensor& q);

/// Coefficient realization for one trial. The sub-cell rotation stream is
/// seeded by trial_seed(master_seed, trial_index), so the field depends only
/// on (config, trial_index).
TensorField build_random_field(const McConfig& config, int trial_index);

struct McStatistics {
    std::vector<double> values;
    std::vector<std::uint64_t> seeds;
    double mean = 0;
    double std_dev = 0;    // sample standard deviation (n-1)
    double std_error = 0;  // std_dev / sqrt(trials)
    McConfig config;

    void recompute();
};

/// Runs the campaign; trials execute independently (optionally on
/// config.threads workers) and any trial failure aborts the whole campaign.
McStatistics monte_carlo(const McConfig& config);

/// Canonical CSV artifact: `# key=value` config echo, a `trial,seed,d_eff`
/// table, and a closing `summary,<mean>,<std>,<stderr>` row. Execution-only
/// settings (thread count) are excluded so reruns are byte-identical.
std::string campaign_csv(const McStatistics& stats);

}  // namespace effdiff
