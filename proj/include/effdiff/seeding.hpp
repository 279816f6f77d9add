#pragma once

#include <cstdint>
#include <random>

namespace effdiff {

/// Stable, collision-resistant seed for one trial of a campaign. For a fixed
/// master seed the map trial_index -> seed is injective (splitmix64 finalizer
/// over an odd-stride input), so parallel and serial runs draw identical
/// per-trial streams in any execution order.
std::uint64_t trial_seed(std::uint64_t master_seed, std::uint64_t trial_index);

/// Deterministic uniform stream. Doubles are built from the top 53 bits of a
/// mt19937_64 word, so the sequence is identical on every platform.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next_u64() { return gen_(); }

    /// Uniform deviate in [0, 1).
    double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

private:
    std::mt19937_64 gen_;
};

}  // namespace effdiff
