// Seeded random streams. xoshiro256** whose state is expanded from a single
// 64-bit key with SplitMix64; replicate r of a run keyed by `seed` uses the
// stream key mix(seed) ^ r.
#pragma once

#include <array>
#include <cstdint>

namespace robwav {

/// Key of replicate r: the seed is scrambled before the xor, otherwise small
/// seeds would share their replicate streams (1 ^ r and 2 ^ r cover the same
/// keys).
std::uint64_t stream_key(std::uint64_t seed, std::uint64_t replicate);

class Rng {
public:
    using result_type = std::uint64_t;

    explicit Rng(std::uint64_t key);

    static Rng stream(std::uint64_t seed, std::uint64_t replicate) { return Rng(stream_key(seed, replicate)); }

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return ~result_type{0}; }

    result_type operator()();

    /// Uniform on the open interval (0, 1), 53-bit resolution.
    double uniform();

    /// Standard normal via the Marsaglia polar method.
    double normal();

private:
    std::array<std::uint64_t, 4> state_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace robwav
