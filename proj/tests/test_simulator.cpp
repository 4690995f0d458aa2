#include "doctest.h"

#include <numeric>

#include "dynavg/simulator.hpp"

using namespace dynavg;

namespace {

RunConfig small_config(ProtocolKind kind, std::uint64_t rounds = 100, std::size_t k = 4) {
    RunConfig cfg;
    cfg.k = k;
    cfg.rounds = rounds;
    cfg.protocol.kind = kind;
    cfg.stream.dim = 6;
    cfg.stream.seed = 11;
    return cfg;
}

}  // namespace

TEST_CASE("first round loss is one per learner from the zero model") {
    RunConfig cfg = small_config(ProtocolKind::NoSync, 1, 2);
    const RunResult res = run_distributed(cfg);
    REQUIRE(res.per_round.size() == 1);
    CHECK(res.per_round[0].loss_round == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(res.per_round[0].messages_cum == 0);
}

TEST_CASE("no-sync runs never communicate") {
    const RunResult res = run_distributed(small_config(ProtocolKind::NoSync, 200));
    for (const RoundMetrics& m : res.per_round) {
        CHECK(m.messages_round == 0);
        CHECK(m.sync_kind == SyncKind::None);
        CHECK(m.violations == 0);
    }
    CHECK(res.ledger.messages_total == 0);
}

TEST_CASE("an unreachable threshold reduces dynamic averaging to no-sync") {
    RunConfig nosync = small_config(ProtocolKind::NoSync, 150);
    RunConfig huge = small_config(ProtocolKind::Dynamic, 150);
    huge.protocol.delta = 1e12;
    const RunResult a = run_distributed(nosync);
    const RunResult b = run_distributed(huge);
    CHECK(b.ledger.messages_total == 0);
    REQUIRE(a.per_round.size() == b.per_round.size());
    for (std::size_t i = 0; i < a.per_round.size(); ++i) {
        CHECK(a.per_round[i].loss_round == b.per_round[i].loss_round);
        CHECK(a.per_round[i].divergence == b.per_round[i].divergence);
    }
    CHECK(a.final_models == b.final_models);
}

TEST_CASE("serial baseline with one learner equals the no-sync run") {
    for (RuleKind rule : {RuleKind::PassiveAggressive, RuleKind::SgdHinge}) {
        RunConfig serial = small_config(ProtocolKind::Serial, 120, 1);
        serial.rule = {rule, 0.1};
        RunConfig nosync = small_config(ProtocolKind::NoSync, 120, 1);
        nosync.rule = {rule, 0.1};
        const RunResult s = run_serial_baseline(serial);
        const RunResult n = run_distributed(nosync);
        CHECK(s.final_models == n.final_models);
        CHECK(s.final_loss_cum() == n.final_loss_cum());
        CHECK(s.ledger.messages_total == 0);
    }
}

TEST_CASE("serial baseline starts at loss one and improves on clean data") {
    RunConfig cfg = small_config(ProtocolKind::Serial, 1250, 8);
    cfg.stream.dim = 10;
    cfg.stream.noise = 0.0;
    const RunResult res = run_serial_baseline(cfg);
    REQUIRE(res.per_round.size() == 1250);
    CHECK(res.per_round[0].loss_round >= 1.0);  // first input is always a unit miss

    // Sublinear growth: the second half of the input sequence costs less
    // than the first half (rounds 1..625 cover inputs 1..5000).
    const double first_half = res.per_round[624].loss_cum;
    const double second_half = res.final_loss_cum() - first_half;
    CHECK(second_half < first_half);
}

TEST_CASE("serial baseline rejects distributed protocols and vice versa") {
    CHECK_THROWS_AS(run_serial_baseline(small_config(ProtocolKind::NoSync)),
                    std::invalid_argument);
    CHECK_THROWS_AS(run_distributed(small_config(ProtocolKind::Serial)),
                    std::invalid_argument);
}

TEST_CASE("static runs pay 2k * ceil(T/b) messages") {
    RunConfig cfg = small_config(ProtocolKind::Static, 10, 4);
    cfg.protocol.period = 3;
    const RunResult res = run_distributed(cfg);
    CHECK(res.ledger.messages_total == 2 * 4 * 4);  // ceil(10/3) = 4
    CHECK(res.ledger.rounds_with_sync == 4);
    // The flush lands on the final round.
    CHECK(res.per_round.back().sync_kind == SyncKind::Full);
}

TEST_CASE("dynamic rounds are safe or synchronized") {
    RunConfig cfg = small_config(ProtocolKind::Dynamic, 400, 6);
    cfg.protocol.delta = 0.05;
    const RunResult res = run_distributed(cfg);
    for (const RoundMetrics& m : res.per_round) {
        if (m.violations == 0) CHECK(m.divergence <= cfg.protocol.delta + 1e-9);
        CHECK(m.messages_round <= 2 * cfg.k);
    }
    CHECK(res.sync_diagnostics.max_mean_shift <= 1e-9);
    CHECK(res.sync_diagnostics.max_post_full_divergence <= 1e-12);
}

TEST_CASE("per-learner violations stay under the drift bound") {
    RunConfig cfg = small_config(ProtocolKind::Dynamic, 500, 5);
    cfg.protocol.delta = 0.2;
    const RunResult res = run_distributed(cfg);
    for (std::size_t l = 0; l < cfg.k; ++l) {
        const double bound = res.drift_sums[l] / std::sqrt(cfg.protocol.delta) +
                             static_cast<double>(cfg.k);
        CHECK(static_cast<double>(res.violation_counts[l]) <= bound);
    }
    // Round violations and per-learner counts agree.
    std::size_t per_round_sum = 0;
    for (const RoundMetrics& m : res.per_round) per_round_sum += m.violations;
    CHECK(per_round_sum == std::accumulate(res.violation_counts.begin(),
                                           res.violation_counts.end(), std::size_t{0}));
}

TEST_CASE("communication shrinks as the threshold grows") {
    std::size_t agree = 0;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        std::size_t previous = SIZE_MAX;
        bool monotone = true;
        for (double delta : {0.01, 0.1, 1.0}) {
            RunConfig cfg = small_config(ProtocolKind::Dynamic, 1000, 8);
            cfg.protocol.delta = delta;
            cfg.stream.seed = seed;
            const std::size_t msgs = run_distributed(cfg).ledger.messages_total;
            if (msgs > previous) monotone = false;
            previous = msgs;
        }
        if (monotone) ++agree;
    }
    CHECK(agree >= 4);  // directional property, majority of seeds
}

TEST_CASE("identical configs give bit-identical results") {
    RunConfig cfg = small_config(ProtocolKind::Dynamic, 300, 5);
    cfg.protocol.delta = 0.1;
    const RunResult a = run_distributed(cfg);
    const RunResult b = run_distributed(cfg);
    CHECK(a.final_models == b.final_models);
    REQUIRE(a.per_round.size() == b.per_round.size());
    for (std::size_t i = 0; i < a.per_round.size(); ++i) {
        CHECK(a.per_round[i].loss_cum == b.per_round[i].loss_cum);
        CHECK(a.per_round[i].messages_cum == b.per_round[i].messages_cum);
        CHECK(a.per_round[i].divergence == b.per_round[i].divergence);
    }
}

TEST_CASE("theorem-1 check arithmetic and guards") {
    RunConfig cfg = small_config(ProtocolKind::Dynamic, 200, 4);
    cfg.protocol.delta = 0.25;
    const RunResult res = run_distributed(cfg);

    const Theorem1Check check = theorem1_check(res, 0.25, 1.0, 4);
    CHECK(check.lhs == res.ledger.messages_total);
    CHECK(check.rhs ==
          doctest::Approx(2.0 * 4 * (1.0 / 0.5) * res.final_loss_cum()).epsilon(1e-12));

    // Zero-communication runs satisfy the bound trivially.
    RunConfig huge = cfg;
    huge.protocol.delta = 1e12;
    const Theorem1Check trivial = theorem1_check(run_distributed(huge), 1e12, 1.0, 4);
    CHECK(trivial.lhs == 0);
    CHECK(trivial.holds);

    CHECK_THROWS_AS(theorem1_check(res, 0.0, 1.0, 4), std::domain_error);
    CHECK_THROWS_AS(theorem1_check(res, -1.0, 1.0, 4), std::domain_error);
    CHECK_THROWS_AS(theorem1_check(res, 0.25, 0.0, 4), std::invalid_argument);

    // Ledger refinement: messages never exceed 2k per violation round.
    std::size_t violation_rounds = 0;
    for (const RoundMetrics& m : res.per_round)
        if (m.violations > 0) ++violation_rounds;
    CHECK(res.ledger.messages_total <= 2 * cfg.k * violation_rounds);
}

TEST_CASE("config validation rejects out-of-range parameters") {
    RunConfig cfg = small_config(ProtocolKind::Dynamic);
    cfg.k = 0;
    CHECK_THROWS_AS(validate(cfg), std::invalid_argument);
    cfg = small_config(ProtocolKind::Dynamic);
    cfg.rounds = 0;
    CHECK_THROWS_AS(validate(cfg), std::invalid_argument);
    cfg = small_config(ProtocolKind::Static);
    cfg.protocol.period = 0;
    CHECK_THROWS_AS(validate(cfg), std::invalid_argument);
    cfg = small_config(ProtocolKind::Dynamic);
    cfg.protocol.delta = -1.0;
    CHECK_THROWS_AS(validate(cfg), std::invalid_argument);
}

TEST_CASE("trajectory recording captures post-sync states") {
    RunConfig cfg = small_config(ProtocolKind::Static, 6, 3);
    cfg.protocol.period = 2;
    cfg.record_trajectory = true;
    const RunResult res = run_distributed(cfg);
    REQUIRE(res.trajectory.size() == 6);
    // On sync rounds all recorded models coincide.
    CHECK(res.trajectory[1][0] == res.trajectory[1][1]);  // t = 2 synced
    CHECK(res.trajectory[1][1] == res.trajectory[1][2]);
    CHECK(res.trajectory[5] == ModelConfiguration(res.final_models));
}
