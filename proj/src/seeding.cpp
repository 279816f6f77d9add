#include "effdiff/seeding.hpp"

namespace effdiff {

std::uint64_t trial_seed(std::uint64_t master_seed, std::uint64_t trial_index) {
    std::uint64_t z = master_seed + 0x9E3779B97F4A7C15ULL * (trial_index + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

}  // namespace effdiff
