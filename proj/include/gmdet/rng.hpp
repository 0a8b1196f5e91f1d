// Counter-based random numbers: every draw is a pure function of
// (seed, stream, trial, step), so simulations are reproducible and
// trivially parallel with no generator state to share or advance.
#pragma once

#include <cstdint>

namespace gmdet {

/// Disjoint draw streams.  Keeping roles separate guarantees that, e.g.,
/// threshold calibration and held-out validation never reuse a draw.
enum class Stream : std::uint64_t {
    calibration = 0, ///< H0 paths used to set the detector threshold
    miss_trials = 1, ///< H1 paths scored against the threshold
    holdout = 2,     ///< fresh H0 paths for false-alarm validation
    path = 3,        ///< free-standing path generation
};

/// Pack a stream role and a trial index into one counter word.
constexpr std::uint64_t trial_key(Stream stream, std::uint64_t trial) {
    return (static_cast<std::uint64_t>(stream) << 56) | trial;
}

/// Philox 2x64, 10 rounds: bijective mix of a 128-bit counter under a
/// 64-bit key.  Returns the first output word.
std::uint64_t philox2x64(std::uint64_t counter_hi, std::uint64_t counter_lo,
                         std::uint64_t key);

/// Uniform draw on the open interval (0, 1).
double uniform_draw(std::uint64_t seed, std::uint64_t trial,
                    std::uint64_t step);

/// Standard normal draw via the inverse-tail transform of uniform_draw,
/// so every normal variate in the project flows through one audited
/// quantile routine.
double gaussian_draw(std::uint64_t seed, std::uint64_t trial,
                     std::uint64_t step);

} // namespace gmdet
