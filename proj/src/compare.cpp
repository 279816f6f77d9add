#include "effdiff/compare.hpp"

#include <cmath>
#include <stdexcept>

namespace effdiff {

TransientComparison transient_comparison(const TensorField& detailed, double d_eff_homogenized,
                                         const ScalarField& initial, const EstimationBC& bc,
                                         const TransientOptions& options) {
    if (!(d_eff_homogenized > 0))
        throw std::invalid_argument("transient_comparison: d_eff must be > 0");

    TensorField homogenized = TensorField::uniform(
        detailed.grid, SymTensor::isotropic(detailed.grid.dim, d_eff_homogenized));
    homogenized.sigma.assign(static_cast<size_t>(detailed.grid.total_cells()),
                             detailed.mean_sigma());

    TransientComparison cmp;
    cmp.detailed = solve_transient(detailed, initial, bc, options).flux;
    cmp.homogenized = solve_transient(homogenized, initial, bc, options).flux;

    double diff2 = 0, ref2 = 0, diff_max = 0, ref_max = 0;
    for (size_t i = 0; i < cmp.detailed.flux.size(); ++i) {
        const double d = cmp.detailed.flux[i] - cmp.homogenized.flux[i];
        diff2 += d * d;
        ref2 += cmp.detailed.flux[i] * cmp.detailed.flux[i];
        diff_max = std::max(diff_max, std::abs(d));
        ref_max = std::max(ref_max, std::abs(cmp.detailed.flux[i]));
    }
    cmp.rel_l2 = ref2 > 0 ? std::sqrt(diff2 / ref2) : 0.0;
    cmp.rel_max = ref_max > 0 ? diff_max / ref_max : 0.0;
    return cmp;
}

}  // namespace effdiff
