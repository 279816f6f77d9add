#include "effdiff/layered.hpp"

#include <stdexcept>

namespace effdiff {

void LayeredMedium::validate() const {
    if (!(thickness_plus > 0) || !(thickness_minus > 0))
        throw std::invalid_argument("LayeredMedium: layer thicknesses must be positive");
    if (!(partition_coefficient > 0))
        throw std::invalid_argument("LayeredMedium: partition coefficient must be positive");
    d_plus.validate("LayeredMedium d_plus");
    d_minus.validate("LayeredMedium d_minus");
    if (d_plus.dim != d_minus.dim)
        throw std::invalid_argument("LayeredMedium: phase tensor dimensions differ");
    if (!d_plus.is_diagonal() || !d_minus.is_diagonal())
        throw std::invalid_argument(
            "LayeredMedium: closed form requires diagonal phase tensors");
    if (normal_axis < 0 || normal_axis >= d_plus.dim)
        throw std::invalid_argument("LayeredMedium: normal axis out of range");
}

SymTensor layered_effective_tensor(const LayeredMedium& medium) {
    medium.validate();
    const double ap = medium.thickness_plus;
    const double am = medium.thickness_minus;
    const double total = ap + am;
    SymTensor eff = SymTensor::zero(medium.d_plus.dim);
    for (int i = 0; i < eff.dim; ++i) {
        const double dp = medium.d_plus(i, i);
        const double dm = medium.d_minus(i, i) / medium.partition_coefficient;
        if (i == medium.normal_axis)
            eff.entry(i, i) = total / (ap / dp + am / dm);
        else
            eff.entry(i, i) = (ap * dp + am * dm) / total;
    }
    return eff;
}

double harmonic_mean_profile(std::span<const std::pair<double, double>> segments) {
    if (segments.empty())
        throw std::invalid_argument("harmonic_mean_profile: empty profile");
    double length = 0, resistance = 0;
    for (const auto& [len, d] : segments) {
        if (!(len > 0)) throw std::invalid_argument("harmonic_mean_profile: segment length <= 0");
        if (!(d > 0)) throw std::invalid_argument("harmonic_mean_profile: diffusivity <= 0");
        length += len;
        resistance += len / d;
    }
    return length / resistance;
}

void TwoPhaseCoefficients::validate() const {
    d1.validate("TwoPhaseCoefficients d1");
    d2.validate("TwoPhaseCoefficients d2");
    if (d1.dim != d2.dim)
        throw std::invalid_argument("TwoPhaseCoefficients: phase tensor dimensions differ");
    if (r1 < 0 || r2 < 0)
        throw std::invalid_argument("TwoPhaseCoefficients: reaction rates must be >= 0");
    if (!(partition_coefficient > 0))
        throw std::invalid_argument("TwoPhaseCoefficients: partition coefficient must be > 0");
}

TransformedCoefficients transform_partition(const TwoPhaseCoefficients& c) {
    c.validate();
    const double kp = c.partition_coefficient;
    TransformedCoefficients out;
    out.region1 = {c.d1, 1.0, c.r1, c.f1};
    out.region2 = {c.d2 * (1.0 / kp), 1.0 / kp, c.r2 / kp, c.f2};
    return out;
}

}  // namespace effdiff
