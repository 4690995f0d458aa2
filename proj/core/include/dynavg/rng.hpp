#pragma once

#include <cstdint>
#include <cmath>
#include <numbers>

#include "dynavg/vec.hpp"

namespace dynavg {

struct SplitMix64Step {
    std::uint64_t value;
    std::uint64_t next_state;
};

/// One SplitMix64 step: advance the state by the golden-ratio increment and
/// return the mixed output. Matches the reference implementation bit for bit.
constexpr SplitMix64Step splitmix64_next(std::uint64_t state) {
    state += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return {z ^ (z >> 31), state};
}

/// The output half of a SplitMix64 step, used as a stateless 64-bit mixer.
constexpr std::uint64_t splitmix64_mix(std::uint64_t x) { return splitmix64_next(x).value; }

/// Deterministic generator over the SplitMix64 sequence. Cheap to seed, so
/// streams derive one per (seed, t, l) counter instead of sharing state.
class Rng64 {
  public:
    explicit constexpr Rng64(std::uint64_t state) : state_(state) {}

    std::uint64_t next_u64() {
        const auto step = splitmix64_next(state_);
        state_ = step.next_state;
        return step.value;
    }

    /// Uniform in [0, 1), 53 random bits.
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Two independent standard normals via Box-Muller. u1 is shifted into
    /// (0, 1] so the log never sees zero.
    void next_gaussian_pair(double& g0, double& g1) {
        const double u1 = (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
        const double u2 = next_double();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * std::numbers::pi * u2;
        g0 = r * std::cos(a);
        g1 = r * std::sin(a);
    }

    Vec next_gaussian_vec(std::size_t n) {
        Vec v(n);
        double g0 = 0.0, g1 = 0.0;
        for (std::size_t i = 0; i + 1 < n; i += 2) {
            next_gaussian_pair(g0, g1);
            v[i] = g0;
            v[i + 1] = g1;
        }
        if (n % 2 == 1) {
            next_gaussian_pair(g0, g1);
            v[n - 1] = g0;
        }
        return v;
    }

    /// Uniform direction on the unit sphere (normalized Gaussian).
    Vec next_unit_vec(std::size_t n) {
        for (;;) {
            Vec v = next_gaussian_vec(n);
            const double len = norm(v);
            if (len > 1e-12) {
                scale(v, 1.0 / len);
                return v;
            }
        }
    }

    constexpr std::uint64_t state() const { return state_; }

  private:
    std::uint64_t state_;
};

}  // namespace dynavg
