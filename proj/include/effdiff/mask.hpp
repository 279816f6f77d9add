#pragma once

#include "effdiff/grid.hpp"
#include "effdiff/tensor.hpp"

#include <cstdint>
#include <vector>

namespace effdiff {

/// Binary phase raster: 0 = aqueous (phase 1), 1 = lipid (phase 2).
/// Row-major; row r maps to grid cell row r (y = r * pixel_size).
struct PhaseMask {
    int width = 0;
    int height = 0;
    double pixel_size = 1.0;
    std::vector<std::uint8_t> labels;

    std::uint8_t at(int x, int y) const {
        return labels[static_cast<size_t>(y) * width + x];
    }
    std::uint8_t& at(int x, int y) { return labels[static_cast<size_t>(y) * width + x]; }

    double lipid_fraction() const;
    void validate() const;
};

/// Synthetic layered geometry: lipid stripes normal to x at volume fraction
/// p2, with optional sinusoidal wobble of the stripe centerlines and randomly
/// placed gaps ("short circuits") across the layers.
struct SynthLayerSpec {
    double lipid_fraction = 0.2;  // p2
    int layer_count = 4;
    double wobble = 0.0;       // centerline amplitude as a fraction of the layer pitch
    double gap_density = 0.0;  // expected gaps per layer
    int width = 256;
    int height = 64;
    double pixel_size = 1.0;
    std::uint64_t seed = 0;

    void validate() const;
};

/// Rasterizes the spec. Stripe widths are dithered row by row so the realized
/// lipid fraction matches p2 to within one pixel row even with wobble and
/// gaps. Throws if the resolution cannot realize p2 (stripes thinner than one
/// pixel or wider than the pitch).
PhaseMask synth_layered_mask(const SynthLayerSpec& spec);

/// One grid cell per pixel; phase-1 cells get d1 (sigma 1), phase-2 cells the
/// transformed d2/K_p (sigma 1/K_p).
TensorField ingest_mask(const PhaseMask& mask, const SymTensor& d1, const SymTensor& d2,
                        double partition_coefficient);

}  // namespace effdiff
