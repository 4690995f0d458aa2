#include "dynavg/simulator.hpp"

#include <cmath>
#include <stdexcept>

namespace dynavg {

const char* to_string(ProtocolKind kind) {
    switch (kind) {
        case ProtocolKind::NoSync: return "nosync";
        case ProtocolKind::Static: return "static";
        case ProtocolKind::Dynamic: return "dynamic";
        case ProtocolKind::Serial: return "serial";
    }
    return "?";
}

void validate(const RunConfig& config) {
    if (config.k < 1) throw std::invalid_argument("k must be >= 1");
    if (config.rounds < 1) throw std::invalid_argument("T must be >= 1");
    switch (config.protocol.kind) {
        case ProtocolKind::Static:
            if (config.protocol.period < 1) throw std::invalid_argument("b must be >= 1");
            break;
        case ProtocolKind::Dynamic:
            if (!(std::isfinite(config.protocol.delta) && config.protocol.delta >= 0.0))
                throw std::invalid_argument("delta must be finite and >= 0");
            break;
        default: break;
    }
    validate(config.rule);
    validate(config.stream);
    validate(config.bounds);
}

namespace {

void observe_sync(SyncDiagnostics& diag, const ModelConfiguration& before,
                  const SyncOutcome& outcome) {
    if (outcome.kind == SyncKind::None) return;
    ++diag.sync_count;
    const double shift = dist(average_models(before), average_models(outcome.models));
    diag.max_mean_shift = std::max(diag.max_mean_shift, shift);
    if (outcome.kind == SyncKind::Full) {
        diag.max_post_full_divergence =
            std::max(diag.max_post_full_divergence, divergence(outcome.models));
    }
}

}  // namespace

RunResult run_distributed(const RunConfig& config) {
    validate(config);
    if (config.protocol.kind == ProtocolKind::Serial)
        throw std::invalid_argument("run_distributed: protocol must not be serial");

    const std::size_t k = config.k;
    const std::size_t dim = config.stream.dim;
    const std::uint64_t total_rounds = config.rounds;

    RunResult result;
    result.per_round.reserve(total_rounds);
    result.violation_counts.assign(k, 0);
    result.drift_sums.assign(k, 0.0);

    ModelConfiguration models(k, Vec(dim, 0.0));
    SyncState state{Vec(dim, 0.0), config.protocol.delta};

    double loss_cum = 0.0;
    std::size_t messages_cum = 0;

    for (std::uint64_t t = 1; t <= total_rounds; ++t) {
        double loss_round = 0.0;
        for (std::size_t l = 0; l < k; ++l) {
            const Example z = draw_example(config.stream, t, l + 1);
            loss_round += hinge_loss(z, models[l]);  // service quality before learning
            Vec updated = apply_rule(config.rule, z, models[l], t, config.bounds);
            result.drift_sums[l] += dist(updated, models[l]);
            models[l] = std::move(updated);
        }
        loss_cum += loss_round;

        const double pre_sync_divergence = divergence(models);

        SyncOutcome outcome;
        switch (config.protocol.kind) {
            case ProtocolKind::NoSync:
                outcome = apply_nosync(models);
                break;
            case ProtocolKind::Static:
                outcome = apply_static(models, t, config.protocol.period);
                if (outcome.kind == SyncKind::None && t == total_rounds)
                    outcome = apply_static(models, config.protocol.period,
                                           config.protocol.period);  // horizon flush
                break;
            case ProtocolKind::Dynamic: {
                std::vector<std::size_t> poll_order;
                for (std::size_t l = 0; l < k; ++l) {
                    if (check_local_condition(models[l], state)) {
                        poll_order.push_back(l);
                    } else {
                        ++result.violation_counts[l];
                    }
                }
                outcome = apply_dynamic(models, state, poll_order);
                break;
            }
            case ProtocolKind::Serial:
                break;  // unreachable, rejected above
        }

        observe_sync(result.sync_diagnostics, models, outcome);
        models = std::move(outcome.models);
        if (outcome.new_reference) state.reference = std::move(*outcome.new_reference);

        result.ledger.record(outcome, dim);
        messages_cum += outcome.messages;
        result.per_round.push_back({t, loss_round, loss_cum, pre_sync_divergence,
                                    outcome.violators.size(), outcome.kind, outcome.messages,
                                    messages_cum});
        if (config.record_trajectory) result.trajectory.push_back(models);
    }

    result.final_models = std::move(models);
    return result;
}

RunResult run_serial_baseline(const RunConfig& config) {
    validate(config);
    if (config.protocol.kind != ProtocolKind::Serial)
        throw std::invalid_argument("run_serial_baseline: protocol must be serial");

    const std::size_t dim = config.stream.dim;

    RunResult result;
    result.per_round.reserve(config.rounds);
    result.violation_counts.assign(1, 0);
    result.drift_sums.assign(1, 0.0);

    Vec model(dim, 0.0);
    double loss_cum = 0.0;
    std::uint64_t input_index = 0;

    for (std::uint64_t t = 1; t <= config.rounds; ++t) {
        double loss_round = 0.0;
        for (std::size_t l = 0; l < config.k; ++l) {
            ++input_index;
            const Example z = draw_example(config.stream, t, l + 1);
            loss_round += hinge_loss(z, model);
            Vec updated = apply_rule(config.rule, z, model, input_index, config.bounds);
            result.drift_sums[0] += dist(updated, model);
            model = std::move(updated);
        }
        loss_cum += loss_round;
        result.ledger.record(SyncOutcome{}, dim);
        result.per_round.push_back(
            {t, loss_round, loss_cum, 0.0, 0, SyncKind::None, 0, 0});
        if (config.record_trajectory) result.trajectory.push_back({model});
    }

    result.final_models = {std::move(model)};
    return result;
}

RunResult run(const RunConfig& config) {
    return config.protocol.kind == ProtocolKind::Serial ? run_serial_baseline(config)
                                                        : run_distributed(config);
}

Theorem1Check theorem1_check(const RunResult& result, double delta, double c_const,
                             std::size_t k) {
    if (!(delta > 0.0)) throw std::domain_error("theorem1_check: delta must be > 0");
    if (!(c_const > 0.0)) throw std::invalid_argument("theorem1_check: c_const must be > 0");
    Theorem1Check check;
    check.lhs = result.ledger.messages_total;
    check.rhs = 2.0 * static_cast<double>(k) * (c_const / std::sqrt(delta)) *
                result.final_loss_cum();
    check.holds = static_cast<double>(check.lhs) <= check.rhs;
    return check;
}

}  // namespace dynavg
