#include "effdiff/mask.hpp"

#include "effdiff/seeding.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace effdiff {

double PhaseMask::lipid_fraction() const {
    long lipid = 0;
    for (std::uint8_t v : labels) lipid += v ? 1 : 0;
    return static_cast<double>(lipid) / static_cast<double>(labels.size());
}

void PhaseMask::validate() const {
    if (width < 1 || height < 1) throw std::invalid_argument("PhaseMask: empty raster");
    if (!(pixel_size > 0)) throw std::invalid_argument("PhaseMask: pixel size must be > 0");
    if (labels.size() != static_cast<size_t>(width) * height)
        throw std::invalid_argument("PhaseMask: label count does not match dimensions");
    for (std::uint8_t v : labels)
        if (v > 1) throw std::invalid_argument("PhaseMask: labels must be 0 or 1");
}

void SynthLayerSpec::validate() const {
    if (!(lipid_fraction > 0 && lipid_fraction < 1))
        throw std::invalid_argument("SynthLayerSpec: lipid fraction must be in (0,1)");
    if (layer_count < 1) throw std::invalid_argument("SynthLayerSpec: need >= 1 layer");
    if (wobble < 0) throw std::invalid_argument("SynthLayerSpec: wobble must be >= 0");
    if (gap_density < 0) throw std::invalid_argument("SynthLayerSpec: gap density must be >= 0");
    if (width < 1 || height < 1) throw std::invalid_argument("SynthLayerSpec: empty raster");
    if (!(pixel_size > 0)) throw std::invalid_argument("SynthLayerSpec: pixel size must be > 0");
}

PhaseMask synth_layered_mask(const SynthLayerSpec& spec) {
    spec.validate();
    const double pitch = static_cast<double>(spec.width) / spec.layer_count;
    RandomStream rng(spec.seed);

    struct Layer {
        double phase = 0;
        std::vector<std::pair<int, int>> gaps;  // [first_row, last_row)
        int open_rows = 0;
        double carry = 0;
    };
    std::vector<Layer> layers(static_cast<size_t>(spec.layer_count));

    const int gap_rows = std::max(1, spec.height / 20);
    long total_open_rows = 0;
    for (Layer& layer : layers) {
        layer.phase = 2.0 * std::numbers::pi * rng.uniform();
        int n_gaps = static_cast<int>(spec.gap_density);
        if (rng.uniform() < spec.gap_density - n_gaps) ++n_gaps;
        for (int gidx = 0; gidx < n_gaps; ++gidx) {
            const int start = static_cast<int>(rng.uniform() * spec.height);
            layer.gaps.emplace_back(start, std::min(start + gap_rows, spec.height));
        }
        layer.open_rows = spec.height;
        for (int y = 0; y < spec.height; ++y)
            for (const auto& [lo, hi] : layer.gaps)
                if (y >= lo && y < hi) {
                    --layer.open_rows;
                    break;
                }
        total_open_rows += layer.open_rows;
    }
    if (total_open_rows == 0)
        throw std::invalid_argument("synth_layered_mask: gaps erase every layer row");

    const double target_pixels =
        spec.lipid_fraction * spec.width * static_cast<double>(spec.height);
    const double row_width = target_pixels / static_cast<double>(total_open_rows);
    if (row_width < 1.0)
        throw std::invalid_argument(
            "synth_layered_mask: resolution too coarse to realize the lipid fraction "
            "(stripes would be thinner than one pixel)");
    if (row_width / pitch + 2.0 * spec.wobble > 1.0)
        throw std::invalid_argument(
            "synth_layered_mask: stripes would overlap (fraction plus wobble exceed the pitch)");

    PhaseMask mask;
    mask.width = spec.width;
    mask.height = spec.height;
    mask.pixel_size = spec.pixel_size;
    mask.labels.assign(static_cast<size_t>(spec.width) * spec.height, 0);

    for (int s = 0; s < spec.layer_count; ++s) {
        Layer& layer = layers[static_cast<size_t>(s)];
        for (int y = 0; y < spec.height; ++y) {
            bool in_gap = false;
            for (const auto& [lo, hi] : layer.gaps)
                if (y >= lo && y < hi) {
                    in_gap = true;
                    break;
                }
            if (in_gap) continue;

            // Row-wise dithering keeps the total pixel count on target.
            const double want = row_width + layer.carry;
            const int w = static_cast<int>(std::lround(want));
            layer.carry = want - w;
            if (w == 0) continue;

            const double center =
                (s + 0.5) * pitch +
                spec.wobble * pitch *
                    std::sin(2.0 * std::numbers::pi * y / spec.height + layer.phase);
            int x0 = static_cast<int>(std::lround(center - 0.5 * w));
            for (int t = 0; t < w; ++t) {
                int x = (x0 + t) % spec.width;
                if (x < 0) x += spec.width;
                mask.at(x, y) = 1;
            }
        }
    }
    return mask;
}

TensorField ingest_mask(const PhaseMask& mask, const SymTensor& d1, const SymTensor& d2,
                        double partition_coefficient) {
    mask.validate();
    d1.validate("ingest_mask d1");
    d2.validate("ingest_mask d2");
    if (d1.dim != 2 || d2.dim != 2)
        throw std::invalid_argument("ingest_mask: phase tensors must be 2D");
    if (!(partition_coefficient > 0))
        throw std::invalid_argument("ingest_mask: partition coefficient must be > 0");

    StructuredGrid grid;
    grid.dim = 2;
    grid.cells = {mask.width, mask.height, 1};
    grid.extent = {mask.width * mask.pixel_size, mask.height * mask.pixel_size, 1.0};

    const SymTensor d2_transformed = d2 * (1.0 / partition_coefficient);
    const double sigma2 = 1.0 / partition_coefficient;

    TensorField field;
    field.grid = grid;
    field.tensors.resize(static_cast<size_t>(grid.total_cells()));
    field.sigma.resize(static_cast<size_t>(grid.total_cells()));
    for (int y = 0; y < mask.height; ++y)
        for (int x = 0; x < mask.width; ++x) {
            const auto cell = static_cast<size_t>(grid.cell_index(x, y));
            if (mask.at(x, y)) {
                field.tensors[cell] = d2_transformed;
                field.sigma[cell] = sigma2;
            } else {
                field.tensors[cell] = d1;
                field.sigma[cell] = 1.0;
            }
        }
    return field;
}

}  // namespace effdiff
