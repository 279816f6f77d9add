#pragma once

#include "effdiff/mask.hpp"

#include <cstddef>
#include <stdexcept>
#include <string>

namespace effdiff {

class PgmParseError : public std::runtime_error {
public:
    PgmParseError(const std::string& msg, std::size_t byte_offset)
        : std::runtime_error(msg + " (byte " + std::to_string(byte_offset) + ")"),
          byte_offset(byte_offset) {}
    std::size_t byte_offset;
};

struct MaskReadResult {
    PhaseMask mask;
    bool binary_source = false;  // P5 vs P2
    std::string warning;         // set when grayscale content was thresholded implicitly
};

/// Reads an 8-bit PGM (plain P2 or binary P5) and thresholds it to a phase
/// mask: values <= threshold are lipid (dark pixels are membranes). A
/// threshold of -1 means the midpoint of the maxval range; if the file then
/// turns out to hold more than two distinct gray levels, the implicit
/// thresholding is recorded as a warning.
MaskReadResult read_pgm_mask(const std::string& path, int threshold = -1,
                             double pixel_size = 1.0);

/// Writes the mask as PGM, lipid black (0), aqueous white (255).
void write_pgm_mask(const PhaseMask& mask, const std::string& path, bool binary = true);

}  // namespace effdiff
