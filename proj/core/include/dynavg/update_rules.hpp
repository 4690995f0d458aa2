#pragma once

#include <cstdint>

#include "dynavg/model.hpp"

namespace dynavg {

enum class RuleKind { PassiveAggressive, SgdHinge };

struct UpdateRuleKind {
    RuleKind kind = RuleKind::PassiveAggressive;
    double eta0 = 0.01;  // SGD base step, unused for PA
};

void validate(const UpdateRuleKind& rule);

/// Passive-aggressive step: the smallest move of w into the halfspace where z
/// has hinge loss zero, i.e. w + tau * y * x with tau = loss / ||x||^2.
/// Throws std::domain_error on a zero feature vector.
Vec pa_update(const Example& z, const Vec& w);

/// Hinge subgradient step with eta_t = eta0 / sqrt(t), projected back onto the
/// model ball. Leaves w untouched when the loss is zero.
Vec sgd_hinge_update(const Example& z, const Vec& w, std::uint64_t t, double eta0,
                     const ModelSpaceBounds& bounds);

/// Dispatch on rule kind; t is the learner's own round counter.
Vec apply_rule(const UpdateRuleKind& rule, const Example& z, const Vec& w, std::uint64_t t,
               const ModelSpaceBounds& bounds);

/// Empirical bounds on the update-magnitude / loss ratio over a sampled batch:
/// gamma_hat is the smallest observed ratio, c_hat the largest, taken over
/// samples with positive loss. A batch with no positive-loss sample reports
/// both as zero.
struct ProportionalityReport {
    double gamma_hat = 0.0;
    double c_hat = 0.0;
    std::size_t samples = 0;
};

/// Draws `sample_count` (model, example) pairs — models uniform in the bounds
/// ball, inputs uniform on the unit sphere, labels fair coin flips — and
/// measures the rule at t = 1. Deterministic in `seed`.
ProportionalityReport proportionality_probe(const UpdateRuleKind& rule, std::size_t sample_count,
                                            std::uint64_t seed, const ModelSpaceBounds& bounds,
                                            std::size_t dim);

}  // namespace dynavg
