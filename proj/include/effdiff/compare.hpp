#pragma once

#include "effdiff/transient.hpp"

namespace effdiff {

struct TransientComparison {
    FluxHistory detailed;
    FluxHistory homogenized;
    double rel_l2 = 0;   // ||N_det - N_hom||_2 / ||N_det||_2 over the recorded steps
    double rel_max = 0;  // max |N_det - N_hom| / max |N_det|
};

/// Runs the detailed field and its homogenized stand-in (constant d_eff,
/// capacity <sigma>) through the same transient problem on matching grids and
/// time steps, and reports the flux-history discrepancies.
TransientComparison transient_comparison(const TensorField& detailed, double d_eff_homogenized,
                                         const ScalarField& initial, const EstimationBC& bc,
                                         const TransientOptions& options);

}  // namespace effdiff
