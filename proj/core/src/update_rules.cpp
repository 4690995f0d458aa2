#include "dynavg/update_rules.hpp"

#include <cmath>
#include <stdexcept>

#include "dynavg/rng.hpp"

namespace dynavg {

void validate(const UpdateRuleKind& rule) {
    if (rule.kind == RuleKind::SgdHinge && !(std::isfinite(rule.eta0) && rule.eta0 > 0.0))
        throw std::invalid_argument("eta0 must be finite and > 0 for the SGD rule");
}

Vec pa_update(const Example& z, const Vec& w) {
    const double xsq = norm_sq(z.x);
    if (xsq == 0.0) throw std::domain_error("pa_update: zero feature vector");
    const double loss = hinge_loss(z, w);
    if (loss == 0.0) return w;
    Vec out = w;
    add_scaled(out, (loss / xsq) * static_cast<double>(z.y), z.x);
    return out;
}

Vec sgd_hinge_update(const Example& z, const Vec& w, std::uint64_t t, double eta0,
                     const ModelSpaceBounds& bounds) {
    if (t < 1) throw std::invalid_argument("sgd_hinge_update: round index t must be >= 1");
    if (hinge_loss(z, w) == 0.0) return w;
    const double eta = eta0 / std::sqrt(static_cast<double>(t));
    Vec out = w;
    add_scaled(out, eta * static_cast<double>(z.y), z.x);
    return project_to_ball(std::move(out), bounds);
}

Vec apply_rule(const UpdateRuleKind& rule, const Example& z, const Vec& w, std::uint64_t t,
               const ModelSpaceBounds& bounds) {
    switch (rule.kind) {
        case RuleKind::PassiveAggressive: return pa_update(z, w);
        case RuleKind::SgdHinge: return sgd_hinge_update(z, w, t, rule.eta0, bounds);
    }
    throw std::logic_error("unreachable rule kind");
}

ProportionalityReport proportionality_probe(const UpdateRuleKind& rule, std::size_t sample_count,
                                            std::uint64_t seed, const ModelSpaceBounds& bounds,
                                            std::size_t dim) {
    if (sample_count < 1) throw std::invalid_argument("sample_count must be >= 1");
    validate(rule);
    validate(bounds);

    Rng64 rng(seed);
    ProportionalityReport report;
    report.samples = sample_count;
    bool seen_positive = false;

    for (std::size_t i = 0; i < sample_count; ++i) {
        // Uniform in the model ball: uniform direction times radius * U^(1/dim).
        Vec w = rng.next_unit_vec(dim);
        scale(w, bounds.model_radius *
                     std::pow(rng.next_double(), 1.0 / static_cast<double>(dim)));
        Example z{rng.next_unit_vec(dim), rng.next_double() < 0.5 ? 1 : -1};

        const double loss = hinge_loss(z, w);
        if (loss <= 0.0) continue;

        const Vec moved = apply_rule(rule, z, w, 1, bounds);
        const double ratio = dist(w, moved) / loss;
        if (!seen_positive) {
            report.gamma_hat = report.c_hat = ratio;
            seen_positive = true;
        } else {
            report.gamma_hat = std::min(report.gamma_hat, ratio);
            report.c_hat = std::max(report.c_hat, ratio);
        }
    }
    return report;
}

}  // namespace dynavg
