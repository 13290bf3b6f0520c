#pragma once

#include <cstdint>
#include <cmath>
#include <string_view>
#include <vector>

namespace orlicz {

// splitmix64, used to expand seeds and to hash check ids into stream offsets.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

inline std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

// xoshiro256** with explicit seeding; identical streams on every platform,
// unlike the unspecified std:: distributions.
class Rng {
public:
    explicit Rng(std::uint64_t seed = 0x5eedULL) {
        std::uint64_t sm = seed;
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

    // uniform in [0,1)
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double a, double b) { return a + (b - a) * uniform(); }

    // log-uniform over [a,b], a,b > 0
    double log_uniform(double a, double b) {
        return std::exp(uniform(std::log(a), std::log(b)));
    }

    // uniform integer in [0, n)
    std::size_t index(std::size_t n) {
        return n == 0 ? 0 : static_cast<std::size_t>(next_u64() % n);
    }

    bool coin(double p = 0.5) { return uniform() < p; }

    std::vector<double> uniform_vector(std::size_t n, double a, double b) {
        std::vector<double> v(n);
        for (auto& x : v) x = uniform(a, b);
        return v;
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }
    std::uint64_t s_[4];
};

// Derives a reproducible per-stream seed from a base seed and a label.
inline std::uint64_t derive_seed(std::uint64_t base, std::string_view label) {
    std::uint64_t s = base ^ fnv1a64(label);
    return splitmix64(s);
}

} // namespace orlicz
