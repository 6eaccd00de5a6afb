// rng.hpp: portable seedable generators (splitmix64 + xoshiro256**).
//
// Traces must be bit-reproducible across platforms, so the generators are
// spelled out here instead of relying on implementation-defined standard
// library distributions. Per-source streams are derived from the master
// seed XOR a splitmix64 hash of the source id.
#pragma once

#include <array>
#include <cstdint>

namespace tdsim {

inline std::uint64_t splitmix64_next(std::uint64_t& state) {
    state += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

inline std::uint64_t hash_u64(std::uint64_t v) {
    std::uint64_t s = v;
    return splitmix64_next(s);
}

class Xoshiro256StarStar {
public:
    explicit Xoshiro256StarStar(std::uint64_t seed) {
        std::uint64_t s = seed;
        for (auto& w : state_) w = splitmix64_next(s);
    }

    std::uint64_t next() {
        auto rotl = [](std::uint64_t x, int k) {
            return (x << k) | (x >> (64 - k));
        };
        const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    // Uniform integer in [lo, hi], inclusive. Debiased via rejection
    // (Lemire's method), so the result does not depend on how the
    // platform rounds 128-bit multiplies.
    std::uint64_t uniform(std::uint64_t lo, std::uint64_t hi) {
        const std::uint64_t span = hi - lo;
        if (span == ~std::uint64_t{0}) return next();
        const std::uint64_t n = span + 1;
        __uint128_t m = static_cast<__uint128_t>(next()) * n;
        auto low = static_cast<std::uint64_t>(m);
        if (low < n) {
            const std::uint64_t threshold = (0 - n) % n;
            while (low < threshold) {
                m = static_cast<__uint128_t>(next()) * n;
                low = static_cast<std::uint64_t>(m);
            }
        }
        return lo + static_cast<std::uint64_t>(m >> 64);
    }

    // True with probability p (p in [0,1]); consumes exactly one draw.
    bool bernoulli(double p) {
        if (p <= 0.0) { next(); return false; }
        if (p >= 1.0) { next(); return true; }
        const double scaled = p * 18446744073709551616.0; // 2^64
        const auto threshold = static_cast<std::uint64_t>(scaled);
        return next() < threshold;
    }

private:
    std::array<std::uint64_t, 4> state_{};
};

// Stream seed for a task source (or other named entity) under a master seed.
inline std::uint64_t stream_seed(std::uint64_t master_seed, std::uint64_t stream_id) {
    return master_seed ^ hash_u64(stream_id + 1);
}

} // namespace tdsim
