#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace relage {

constexpr std::uint64_t splitmix64(std::uint64_t z) noexcept {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Seed for stream `stream` of master seed `seed`. Two mixing rounds keep
/// neighbouring stream indices decorrelated, so chunked simulations can
/// derive one independent stream per chunk from a single user seed.
constexpr std::uint64_t derive_stream(std::uint64_t seed, std::uint64_t stream) noexcept {
    return splitmix64(splitmix64(seed) ^ splitmix64(stream + 0x632be59bd9b4e019ULL));
}

/// mt19937_64 plus explicit bit-to-double conversion. The standard pins the
/// engine output exactly; the library distribution adaptors it does not, so
/// uniforms are assembled from raw bits here and every variate transform
/// lives next to its distribution. Same seed, same platform or not: same
/// sequence.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform on [0, 1).
    double next_double() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform on (0, 1); offset by half an ulp so log() stays finite.
    double next_double_open() {
        return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
    }

    /// Standard normal via the polar method.
    double next_normal() {
        double u, v, s;
        do {
            u = 2.0 * next_double() - 1.0;
            v = 2.0 * next_double() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        return u * std::sqrt(-2.0 * std::log(s) / s);
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace relage
