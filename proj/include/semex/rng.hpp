// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstdint>

namespace semex {

// xoshiro256++ (Blackman & Vigna, 2019) seeded through splitmix64.
//
// Every Monte Carlo rep draws from its own stream, keyed by
// (root seed, experiment tag, rep index).  Streams are created up
// front from the key, never from thread identity, so a run is
// bit-reproducible for any worker count.  Transform methods
// (uniform, exponential, ...) are hand-rolled rather than taken from
// <random> because libstdc++/libc++ distributions are not required
// to produce identical streams.

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

class rng {
  public:
    explicit rng(std::uint64_t seed) {
        std::uint64_t sm = seed;
        for (auto& w : s_) w = splitmix64(sm);
    }

    // Independent stream for one rep of one experiment.
    static rng stream(std::uint64_t root_seed, std::uint64_t experiment_tag,
                      std::uint64_t rep) {
        std::uint64_t sm = root_seed;
        std::uint64_t a = splitmix64(sm) ^ (experiment_tag * 0xd1342543de82ef95ULL);
        std::uint64_t b = splitmix64(sm) ^ (rep * 0xaf251af3b0f025b5ULL);
        std::uint64_t key = a;
        key ^= splitmix64(b) + 0x9e3779b97f4a7c15ULL + (key << 6) + (key >> 2);
        return rng(key);
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // Uniform on the open interval (0,1); never returns an endpoint.
    double uniform01() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    double exponential() { return -std::log(uniform01()); }

    double normal() {
        // Box-Muller, one deviate per call.
        double u = uniform01();
        double v = uniform01();
        return std::sqrt(-2.0 * std::log(u)) * std::cos(6.283185307179586477 * v);
    }

    // Integer in [0, n).
    std::uint64_t below(std::uint64_t n) {
        // Lemire's multiply-shift rejection.
        std::uint64_t x = next_u64();
        __uint128_t m = static_cast<__uint128_t>(x) * n;
        auto lo = static_cast<std::uint64_t>(m);
        if (lo < n) {
            std::uint64_t t = (0 - n) % n;
            while (lo < t) {
                x = next_u64();
                m = static_cast<__uint128_t>(x) * n;
                lo = static_cast<std::uint64_t>(m);
            }
        }
        return static_cast<std::uint64_t>(m >> 64);
    }

  private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }
    std::uint64_t s_[4];
};

} // namespace semex
