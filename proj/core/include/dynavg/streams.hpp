#pragma once

#include <cstdint>

#include "dynavg/model.hpp"

namespace dynavg {

enum class StreamKind { StaticLinear, RotatingLinear, AbruptSwitch };

/// A deterministic synthetic stream of labeled unit-norm inputs. Every example
/// is a pure function of (seed, t, l): learners and rounds can be generated in
/// any order and always see the same data.
///
/// Labels come from a round-dependent target hyperplane u_t:
///   StaticLinear   - u_t = e1 for the whole run
///   RotatingLinear - e1 rotated by t * drift_rate radians in the (e1, e2) plane
///   AbruptSwitch   - a fresh random unit target every switch_every rounds
/// and are flipped independently with probability `noise`.
struct StreamSpec {
    StreamKind kind = StreamKind::StaticLinear;
    std::size_t dim = 10;
    double noise = 0.05;             // label flip probability, in [0, 0.5)
    double drift_rate = 0.0;         // radians per round, RotatingLinear only
    std::uint64_t switch_every = 1000;  // rounds per target epoch, AbruptSwitch only
    std::uint64_t seed = 1;
};

void validate(const StreamSpec& spec);

/// Target hyperplane normal for round t (t >= 1).
Vec target_direction(const StreamSpec& spec, std::uint64_t t);

/// Example seen by learner l (1-based) at round t (1-based). ||x|| = 1 up to
/// floating-point rounding.
Example draw_example(const StreamSpec& spec, std::uint64_t t, std::size_t l);

}  // namespace dynavg
