#pragma once

#include <cmath>
#include <cstdint>

#include "adopt/zig_tables.hpp"

namespace adopt {

// Identifies one reproducible random stream. Replication j of a Monte Carlo
// run uses stream_id = base.stream_id + j, so results do not depend on how
// replications are scheduled across threads.
struct RngSpec {
    std::uint64_t seed = 0;
    std::uint64_t stream_id = 0;
};

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace detail

// xoshiro256++ (Blackman/Vigna), one independent instance per stream.
// State is derived from (seed, stream_id) through splitmix64, so distinct
// streams are decorrelated and a stream is identical on every thread count.
class Rng {
public:
    explicit Rng(RngSpec spec) {
        std::uint64_t sm = spec.seed ^ (0x632be59bd9b4e019ULL * (spec.stream_id + 1));
        for (auto& w : state_) w = detail::splitmix64(sm);
        if ((state_[0] | state_[1] | state_[2] | state_[3]) == 0) state_[0] = 1;
    }

    std::uint64_t next_u64() {
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

    // Uniform on [0, 1), 53 random bits.
    double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Standard normal via a 128-layer ziggurat.
    double next_normal() {
        for (;;) {
            const std::uint64_t u = next_u64();
            const int layer = static_cast<int>(u & 127);
            const double sign = (u & 128) ? -1.0 : 1.0;
            const double f = static_cast<double>(u >> 11) * 0x1.0p-53;
            const double x = f * detail::kZigEdge[layer];
            if (x < detail::kZigEdge[layer + 1]) return sign * x;
            if (layer == 0) return sign * normal_tail();
            const double ylo = detail::kZigHeight[layer];
            const double yhi = detail::kZigHeight[layer + 1];
            const double y = ylo + next_unit() * (yhi - ylo);
            if (y < std::exp(-0.5 * x * x)) return sign * x;
        }
    }

    // Exponential with given rate, by inverse CDF. 1 - next_unit() is in
    // (0, 1], so the log argument never vanishes.
    double next_exponential(double rate) { return -std::log(1.0 - next_unit()) / rate; }

    // Laplace(location, scale) by inverse CDF.
    double next_laplace(double location, double scale) {
        const double u = next_unit() - 0.5;
        return location - scale * sgn(u) * std::log(1.0 - 2.0 * std::abs(u));
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
    static double sgn(double x) { return x < 0.0 ? -1.0 : 1.0; }

    // Marsaglia tail method for |x| > R.
    double normal_tail() {
        double x, y;
        do {
            x = -std::log(1.0 - next_unit()) / detail::kZigR;
            y = -std::log(1.0 - next_unit());
        } while (2.0 * y < x * x);
        return detail::kZigR + x;
    }

    std::uint64_t state_[4];
};

}  // namespace adopt
