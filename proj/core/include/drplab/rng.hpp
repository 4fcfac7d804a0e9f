#pragma once

#include <cmath>
#include <cstdint>

#include "drplab/types.hpp"

namespace drp {

/// xoshiro256++ seeded through splitmix64. All randomized machinery in the
/// library draws from this generator instead of <random> distributions,
/// whose output is implementation-defined; identical seeds must reproduce
/// identical bytes in emitted artifacts.
class Rng {
public:
    explicit Rng(std::uint64_t seed) noexcept {
        std::uint64_t sm = seed;
        for (auto& word : state_) word = splitmix64(sm);
    }

    std::uint64_t next() noexcept {
        const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    /// Uniform double in [0, 1), 53 random bits.
    double uniform() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }

    /// Standard normal via Box-Muller (one value per call, no cached spare).
    double normal() noexcept {
        double u1 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
    }

    Vector uniform_vector(Index dim, double lo, double hi) {
        Vector v(dim);
        for (Index i = 0; i < dim; ++i) v[i] = uniform(lo, hi);
        return v;
    }

    /// Uniform direction on the Euclidean unit sphere.
    Vector unit_sphere(Index dim) {
        Vector v(dim);
        double norm2 = 0.0;
        do {
            for (Index i = 0; i < dim; ++i) v[i] = normal();
            norm2 = v.norm();
        } while (norm2 < 1e-12);
        return v / norm2;
    }

    /// Derived generator for an independent substream.
    Rng fork(std::uint64_t stream) noexcept {
        Rng child(next() ^ (0x9e3779b97f4a7c15ULL * (stream + 1)));
        return child;
    }

    static std::uint64_t splitmix64(std::uint64_t& state) noexcept {
        state += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) noexcept {
        return (x << k) | (x >> (64 - k));
    }

    std::uint64_t state_[4];
};

}  // namespace drp
