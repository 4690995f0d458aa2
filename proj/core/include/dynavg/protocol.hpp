#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "dynavg/vec.hpp"

namespace dynavg {

/// The k local models, learner-indexed. All share one dimension.
using ModelConfiguration = std::vector<Vec>;

/// Shared monitoring state for the dynamic protocol: the reference vector the
/// local conditions are checked against, and the divergence threshold.
///
/// delta = 0 is admitted: it degenerates to "synchronize whenever any model
/// moved", which makes the operator equivalent to averaging every round.
struct SyncState {
    Vec reference;
    double delta = 0.1;
};

void validate(const SyncState& state);

enum class SyncKind { None, Partial, Full };

const char* to_string(SyncKind kind);

/// Result of applying a synchronization operator to one round's models.
/// messages counts model transfers through the coordinator (one model each
/// way is two messages); it never exceeds 2k.
struct SyncOutcome {
    ModelConfiguration models;
    std::optional<Vec> new_reference;      // set on full synchronization only
    SyncKind kind = SyncKind::None;
    std::size_t messages = 0;
    std::vector<std::size_t> violators;    // 0-based learner indices
};

constexpr std::size_t message_bytes(std::size_t dim) { return 8 * dim + 16; }

struct RoundComm {
    std::size_t messages = 0;
    SyncKind kind = SyncKind::None;
};

/// Exact communication accounting: per-round message counts plus running
/// totals, with bytes derived from the model dimension.
struct CommLedger {
    std::size_t messages_total = 0;
    std::size_t bytes_total = 0;
    std::size_t rounds_with_sync = 0;
    std::vector<RoundComm> per_round;

    void record(const SyncOutcome& outcome, std::size_t dim);
};

/// Mean squared L2 distance of the models to their average. Zero exactly when
/// all models coincide.
double divergence(const ModelConfiguration& models);

/// Coordinatewise mean over a nonempty learner subset (0-based indices).
Vec average_models(const ModelConfiguration& models, std::span<const std::size_t> subset);

/// Coordinatewise mean over all learners.
Vec average_models(const ModelConfiguration& models);

/// True iff ||w - reference||^2 <= delta.
bool check_local_condition(const Vec& w, const SyncState& state);

/// Identity operator: no messages, models unchanged.
SyncOutcome apply_nosync(const ModelConfiguration& models);

/// Periodic averaging: replaces every model with the global average when
/// t mod b == 0 (2k messages), identity otherwise. Throws on b == 0.
SyncOutcome apply_static(const ModelConfiguration& models, std::uint64_t t, std::uint64_t b);

/// Divergence-triggered averaging with partial synchronization.
///
/// Learners violating the local condition send their models to the
/// coordinator. While the running subset average still violates the condition
/// against the reference, the coordinator polls further non-violating learners
/// in `poll_order`, in doubling batches (|B|, 2|B|, 4|B|, ...). If a proper
/// subset average lands within the threshold, only that subset is overwritten
/// with its average (partial synchronization, reference kept). Once the subset
/// has grown to all k learners the outcome is a full synchronization: every
/// model becomes the global average and the reference is reset to it. The
/// doubling schedule caps the per-round cost at 2k messages either way, and
/// neither outcome moves the global mean.
///
/// `poll_order` must be a permutation of exactly the non-violating learners;
/// anything else throws std::logic_error.
SyncOutcome apply_dynamic(const ModelConfiguration& models, const SyncState& state,
                          std::span<const std::size_t> poll_order);

}  // namespace dynavg
