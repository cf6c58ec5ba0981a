#pragma once

#include <cstdint>
#include <string_view>

namespace uwr {

// splitmix64: seed expander (Steele, Lea, Flood 2014).
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// FNV-1a 64-bit; used for stream tags and artifact checksums.
inline std::uint64_t fnv1a64(std::string_view data,
                             std::uint64_t h = 0xCBF29CE484222325ULL) {
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001B3ULL;
    }
    return h;
}

// xoshiro256** (Blackman, Vigna). Portable and bit-reproducible across
// platforms; every stochastic module draws from a stream keyed by
// (scenario seed, module tag, salt) so results do not depend on call order
// elsewhere in the program.
class Rng {
public:
    Rng(std::uint64_t seed, std::string_view tag, std::uint64_t salt = 0) {
        std::uint64_t sm = seed ^ fnv1a64(tag) ^ (0x9E3779B97F4A7C15ULL * (salt + 1));
        for (auto& w : s_) w = splitmix64(sm);
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // Uniform in [0, 1), 53-bit resolution.
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

    // Unbiased integer in [0, n); n > 0. Lemire-style multiply with rejection.
    std::uint64_t next_below(std::uint64_t n) {
        #ifdef __SIZEOF_INT128__
        std::uint64_t x = next_u64();
        __uint128_t m = static_cast<__uint128_t>(x) * n;
        auto lo = static_cast<std::uint64_t>(m);
        if (lo < n) {
            std::uint64_t threshold = (0 - n) % n;
            while (lo < threshold) {
                x = next_u64();
                m = static_cast<__uint128_t>(x) * n;
                lo = static_cast<std::uint64_t>(m);
            }
        }
        return static_cast<std::uint64_t>(m >> 64);
        #else
        return next_u64() % n;
        #endif
    }

    std::size_t index(std::size_t n) { return static_cast<std::size_t>(next_below(n)); }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }
    std::uint64_t s_[4];
};

} // namespace uwr
