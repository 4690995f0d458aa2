#include "dynavg/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dynavg {

namespace {

SyncOutcome full_average(const ModelConfiguration& models,
                         std::vector<std::size_t> violators = {}) {
    Vec mean = average_models(models);
    SyncOutcome out;
    out.models.assign(models.size(), mean);
    out.new_reference = std::move(mean);
    out.kind = SyncKind::Full;
    out.messages = 2 * models.size();
    out.violators = std::move(violators);
    return out;
}

}  // namespace

void validate(const SyncState& state) {
    if (!(std::isfinite(state.delta) && state.delta >= 0.0))
        throw std::invalid_argument("delta must be finite and >= 0");
}

const char* to_string(SyncKind kind) {
    switch (kind) {
        case SyncKind::None: return "none";
        case SyncKind::Partial: return "partial";
        case SyncKind::Full: return "full";
    }
    return "?";
}

void CommLedger::record(const SyncOutcome& outcome, std::size_t dim) {
    per_round.push_back({outcome.messages, outcome.kind});
    messages_total += outcome.messages;
    bytes_total += outcome.messages * message_bytes(dim);
    if (outcome.kind != SyncKind::None) ++rounds_with_sync;
}

double divergence(const ModelConfiguration& models) {
    if (models.empty()) throw std::invalid_argument("divergence: empty configuration");
    const Vec mean = average_models(models);
    double s = 0.0;
    for (const Vec& w : models) s += dist_sq(w, mean);
    return s / static_cast<double>(models.size());
}

Vec average_models(const ModelConfiguration& models, std::span<const std::size_t> subset) {
    if (subset.empty()) throw std::domain_error("average_models: empty subset");
    Vec mean(models.at(subset.front()).size(), 0.0);
    for (std::size_t l : subset) {
        const Vec& w = models.at(l);
        require_same_dim(mean, w, "average_models");
        for (std::size_t i = 0; i < mean.size(); ++i) mean[i] += w[i];
    }
    scale(mean, 1.0 / static_cast<double>(subset.size()));
    return mean;
}

Vec average_models(const ModelConfiguration& models) {
    if (models.empty()) throw std::domain_error("average_models: empty configuration");
    Vec mean(models.front().size(), 0.0);
    for (const Vec& w : models) {
        require_same_dim(mean, w, "average_models");
        for (std::size_t i = 0; i < mean.size(); ++i) mean[i] += w[i];
    }
    scale(mean, 1.0 / static_cast<double>(models.size()));
    return mean;
}

bool check_local_condition(const Vec& w, const SyncState& state) {
    return dist_sq(w, state.reference) <= state.delta;
}

SyncOutcome apply_nosync(const ModelConfiguration& models) {
    SyncOutcome out;
    out.models = models;
    return out;
}

SyncOutcome apply_static(const ModelConfiguration& models, std::uint64_t t, std::uint64_t b) {
    if (b == 0) throw std::invalid_argument("apply_static: period b must be >= 1");
    if (t % b != 0) return apply_nosync(models);
    SyncOutcome out = full_average(models);
    out.new_reference.reset();  // periodic averaging keeps no reference vector
    return out;
}

SyncOutcome apply_dynamic(const ModelConfiguration& models, const SyncState& state,
                          std::span<const std::size_t> poll_order) {
    validate(state);
    const std::size_t k = models.size();

    std::vector<std::size_t> violators;
    std::vector<bool> violating(k, false);
    for (std::size_t l = 0; l < k; ++l) {
        if (!check_local_condition(models[l], state)) {
            violators.push_back(l);
            violating[l] = true;
        }
    }

    // poll_order must cover exactly the learners whose condition holds.
    if (poll_order.size() != k - violators.size())
        throw std::logic_error("apply_dynamic: poll_order size inconsistent with violation set");
    {
        std::vector<bool> seen(k, false);
        for (std::size_t l : poll_order) {
            if (l >= k || violating[l] || seen[l])
                throw std::logic_error("apply_dynamic: poll_order inconsistent with violation set");
            seen[l] = true;
        }
    }

    if (violators.empty()) return apply_nosync(models);

    std::vector<std::size_t> subset = violators;  // collected by the coordinator
    std::size_t polled = 0;
    std::size_t wave = violators.size();

    for (;;) {
        if (subset.size() == k) return full_average(models, std::move(violators));

        const Vec subset_mean = average_models(models, subset);
        if (dist_sq(subset_mean, state.reference) <= state.delta) {
            SyncOutcome out;
            out.models = models;
            for (std::size_t l : subset) out.models[l] = subset_mean;
            out.kind = SyncKind::Partial;
            out.messages = 2 * subset.size();
            out.violators = std::move(violators);
            return out;
        }

        const std::size_t take = std::min(wave, poll_order.size() - polled);
        for (std::size_t i = 0; i < take; ++i) subset.push_back(poll_order[polled++]);
        wave *= 2;
    }
}

}  // namespace dynavg
