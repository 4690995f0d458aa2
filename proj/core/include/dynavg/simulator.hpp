#pragma once

#include <cstdint>
#include <vector>

#include "dynavg/protocol.hpp"
#include "dynavg/streams.hpp"
#include "dynavg/update_rules.hpp"

namespace dynavg {

enum class ProtocolKind { NoSync, Static, Dynamic, Serial };

const char* to_string(ProtocolKind kind);

struct ProtocolSpec {
    ProtocolKind kind = ProtocolKind::Dynamic;
    double delta = 0.1;         // Dynamic: divergence threshold (>= 0)
    std::uint64_t period = 10;  // Static: rounds between synchronizations (>= 1)
};

struct RunConfig {
    std::size_t k = 8;
    std::uint64_t rounds = 10000;  // T
    ProtocolSpec protocol;
    UpdateRuleKind rule;
    StreamSpec stream;
    ModelSpaceBounds bounds;
    bool record_trajectory = false;  // keep a post-sync model snapshot per round
};

void validate(const RunConfig& config);

struct RoundMetrics {
    std::uint64_t t = 0;
    double loss_round = 0.0;       // sum over learners, measured before updating
    double loss_cum = 0.0;
    double divergence = 0.0;       // after updates, before synchronization
    std::size_t violations = 0;    // learners whose local condition failed
    SyncKind sync_kind = SyncKind::None;
    std::size_t messages_round = 0;
    std::size_t messages_cum = 0;
};

/// Worst-case observations across all synchronizations of a run. The global
/// mean must never move and a full synchronization must leave zero divergence;
/// these record how close a run came to breaking that.
struct SyncDiagnostics {
    double max_mean_shift = 0.0;
    double max_post_full_divergence = 0.0;
    std::size_t sync_count = 0;
};

struct RunResult {
    std::vector<RoundMetrics> per_round;
    ModelConfiguration final_models;
    CommLedger ledger;
    std::vector<std::size_t> violation_counts;  // per learner
    std::vector<double> drift_sums;             // per learner, sum of update magnitudes
    SyncDiagnostics sync_diagnostics;
    std::vector<ModelConfiguration> trajectory;  // filled when record_trajectory is set

    double final_loss_cum() const { return per_round.empty() ? 0.0 : per_round.back().loss_cum; }
};

/// Round-based engine: every learner draws its input, records the loss of its
/// current model, updates, and then the configured synchronization operator is
/// applied once. All models (and the dynamic reference) start at zero.
/// Deterministic in the config. The protocol must not be Serial.
///
/// Static runs synchronize one extra time at t = T when T is not a multiple of
/// the period, so a run always pays for ceil(T / b) synchronizations.
RunResult run_distributed(const RunConfig& config);

/// A single model consuming the same k*T inputs in round-major order
/// (z_{t,1}, ..., z_{t,k}, z_{t+1,1}, ...), with losses aggregated back into
/// T rounds of k inputs. The SGD step index is the serial input counter.
RunResult run_serial_baseline(const RunConfig& config);

/// Dispatches on config.protocol.kind.
RunResult run(const RunConfig& config);

struct Theorem1Check {
    std::size_t lhs = 0;  // messages_total
    double rhs = 0.0;     // 2k * (c / sqrt(delta)) * cumulative loss
    bool holds = false;
};

/// Communication bound check for a dynamic run: messages_total against
/// 2k * (c_const / sqrt(delta)) * final cumulative loss. Use c_const = 1 for
/// the PA rule on unit-norm streams. Throws std::domain_error on delta <= 0.
Theorem1Check theorem1_check(const RunResult& result, double delta, double c_const,
                             std::size_t k);

}  // namespace dynavg
