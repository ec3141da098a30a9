// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <random>

#include "irsce/types.hpp"

namespace irsce {

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace detail

/**
 * Deterministic random stream.
 *
 * Streams are derived from a master seed plus an integer path
 * (scenario, grid-point key, trial index, purpose), so every trial owns an
 * independent stream that is reproducible in isolation and independent of
 * the worker count. Engine is mt19937_64; normals come from Box-Muller on
 * raw 53-bit uniforms, so draws are bit-stable for a given platform.
 */
class RngStream {
public:
    explicit RngStream(std::uint64_t seed) : engine_(mix_single(seed)) {}

    /// Child stream at `master` / path[0] / path[1] / ...
    static RngStream derive(std::uint64_t master, std::initializer_list<std::uint64_t> path) {
        std::uint64_t h = master;
        (void)detail::splitmix64(h);
        for (std::uint64_t p : path) {
            h ^= p + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
            (void)detail::splitmix64(h);
        }
        RngStream s(0);
        s.engine_.seed(h);
        s.has_spare_ = false;
        return s;
    }

    /// Uniform on [0, 1).
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform phase on [0, 2π).
    double phase() { return kTwoPi * uniform(); }

    double standard_normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        // u1 in (0, 1] keeps the log finite.
        const double u1 = (static_cast<double>(engine_() >> 11) + 1.0) * 0x1.0p-53;
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double t = kTwoPi * u2;
        spare_ = r * std::sin(t);
        has_spare_ = true;
        return r * std::cos(t);
    }

    /// Circularly-symmetric complex Gaussian CN(0, variance),
    /// generated as (g1 + j·g2)·sqrt(variance/2).
    Complex complex_normal(double variance) {
        const double s = std::sqrt(variance / 2.0);
        const double re = s * standard_normal();
        const double im = s * standard_normal();
        return {re, im};
    }

private:
    static std::uint64_t mix_single(std::uint64_t seed) {
        std::uint64_t h = seed;
        return detail::splitmix64(h);
    }

    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace irsce
