#pragma once

#include <cstdint>
#include <random>

namespace tabp {

/// Uniform source backed by a 64-bit Mersenne twister. Variates are mapped to
/// the open interval (0,1) by hand so streams are identical on every platform
/// (std::uniform_real_distribution is implementation-defined).
class RandomSource {
public:
    explicit RandomSource(std::uint64_t seed) : engine_{seed} {}

    /// Independent stream for replicate `index` of a run seeded with `master`.
    static RandomSource for_replicate(std::uint64_t master, std::uint64_t index);

    /// Uniform variate strictly inside (0,1).
    double uniform() {
        return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
    }

    std::uint64_t next_u64() { return engine_(); }

private:
    std::mt19937_64 engine_;
};

/// splitmix64 finalizer; used to decorrelate derived seeds.
std::uint64_t mix64(std::uint64_t x);

}  // namespace tabp
