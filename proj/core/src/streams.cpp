#include "dynavg/streams.hpp"

#include <cmath>
#include <stdexcept>

#include "dynavg/rng.hpp"

namespace dynavg {

namespace {

// Flattens (t, l) into one counter; supports up to 2^20 learners per round.
constexpr std::uint64_t kLearnerStride = 1ULL << 20;

// Domain separation between per-example draws and per-epoch target draws.
constexpr std::uint64_t kTargetTag = 0x7D1F0A2B9C356E47ULL;

Rng64 example_rng(std::uint64_t seed, std::uint64_t t, std::size_t l) {
    const std::uint64_t counter = t * kLearnerStride + static_cast<std::uint64_t>(l);
    return Rng64(splitmix64_mix(splitmix64_mix(seed ^ counter)));
}

}  // namespace

void validate(const StreamSpec& spec) {
    if (spec.dim < 1) throw std::invalid_argument("dim must be >= 1");
    if (spec.kind == StreamKind::RotatingLinear && spec.dim < 2)
        throw std::invalid_argument("dim must be >= 2 for a rotating stream");
    if (!(spec.noise >= 0.0 && spec.noise < 0.5))
        throw std::invalid_argument("noise must be in [0, 0.5)");
    if (!std::isfinite(spec.drift_rate))
        throw std::invalid_argument("drift_rate must be finite");
    if (spec.kind == StreamKind::AbruptSwitch && spec.switch_every < 1)
        throw std::invalid_argument("switch_every must be >= 1");
}

Vec target_direction(const StreamSpec& spec, std::uint64_t t) {
    switch (spec.kind) {
        case StreamKind::StaticLinear: {
            Vec u(spec.dim, 0.0);
            u[0] = 1.0;
            return u;
        }
        case StreamKind::RotatingLinear: {
            const double angle = static_cast<double>(t) * spec.drift_rate;
            Vec u(spec.dim, 0.0);
            u[0] = std::cos(angle);
            u[1] = std::sin(angle);
            return u;
        }
        case StreamKind::AbruptSwitch: {
            const std::uint64_t epoch = (t - 1) / spec.switch_every;
            Rng64 rng(splitmix64_mix(splitmix64_mix(spec.seed ^ kTargetTag ^ epoch)));
            return rng.next_unit_vec(spec.dim);
        }
    }
    throw std::logic_error("unreachable stream kind");
}

Example draw_example(const StreamSpec& spec, std::uint64_t t, std::size_t l) {
    if (t < 1) throw std::invalid_argument("round index t must be >= 1");
    if (l < 1 || l >= kLearnerStride) throw std::invalid_argument("learner index out of range");

    Rng64 rng = example_rng(spec.seed, t, l);
    const Vec u = target_direction(spec, t);

    Vec x;
    double m = 0.0;
    do {
        x = rng.next_unit_vec(spec.dim);
        m = dot(u, x);
    } while (m == 0.0);  // exact ties carry no label; resample

    int y = m > 0.0 ? 1 : -1;
    if (rng.next_double() < spec.noise) y = -y;
    return Example{std::move(x), y};
}

}  // namespace dynavg
