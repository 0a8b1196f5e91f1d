#include "gmdet/rng.hpp"

#include "gmdet/normal.hpp"

namespace gmdet {

namespace {

constexpr std::uint64_t kPhiloxMult = 0xD2B74407B1CE6E93ull;
constexpr std::uint64_t kWeyl = 0x9E3779B97F4A7C15ull;

inline void mulhilo(std::uint64_t a, std::uint64_t b, std::uint64_t& hi,
                    std::uint64_t& lo) {
    unsigned __int128 prod =
        static_cast<unsigned __int128>(a) * static_cast<unsigned __int128>(b);
    hi = static_cast<std::uint64_t>(prod >> 64);
    lo = static_cast<std::uint64_t>(prod);
}

} // namespace

std::uint64_t philox2x64(std::uint64_t counter_hi, std::uint64_t counter_lo,
                         std::uint64_t key) {
    std::uint64_t x0 = counter_hi;
    std::uint64_t x1 = counter_lo;
    for (int round = 0; round < 10; ++round) {
        std::uint64_t hi, lo;
        mulhilo(kPhiloxMult, x0, hi, lo);
        x0 = hi ^ key ^ x1;
        x1 = lo;
        key += kWeyl;
    }
    return x0;
}

double uniform_draw(std::uint64_t seed, std::uint64_t trial,
                    std::uint64_t step) {
    std::uint64_t bits = philox2x64(trial, step, seed);
    // 53 random bits centered in (0, 1); never returns an endpoint.
    return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
}

double gaussian_draw(std::uint64_t seed, std::uint64_t trial,
                     std::uint64_t step) {
    return -normal_tail_inv(uniform_draw(seed, trial, step));
}

} // namespace gmdet
