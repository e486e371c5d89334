#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <random>

namespace unicl {

/// Deterministic random stream. All transforms are spelled out here rather
/// than taken from <random> distributions, so streams are reproducible
/// across standard library implementations, not just across runs.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next_u64() { return eng_(); }

    /// Uniform on [0, 1) with 53 random bits.
    double uniform() {
        return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
    }

    /// Uniform on (0, 1].
    double uniform_pos() { return 1.0 - uniform(); }

    /// Exponential with the given rate, by inversion.
    double exponential(double rate = 1.0) {
        return -std::log(uniform_pos()) / rate;
    }

    /// Standard normal via Box-Muller (cosine branch).
    double normal() {
        const double r = std::sqrt(-2.0 * std::log(uniform_pos()));
        const double phi = 6.283185307179586476925286766559 * uniform();
        return r * std::cos(phi);
    }

    bool coin() { return (eng_() >> 63) != 0; }

private:
    std::mt19937_64 eng_;
};

/// splitmix64 finalizer; the standard 64-bit mixer.
inline std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

/// Stable combination of seed components (base seed, cell coordinates,
/// replicate index, ...). Order-sensitive.
inline std::uint64_t mix_seed(std::initializer_list<std::uint64_t> parts) {
    std::uint64_t h = 0x2545f4914f6cdd1dull;
    for (std::uint64_t p : parts) h = splitmix64(h ^ p);
    return h;
}

} // namespace unicl
