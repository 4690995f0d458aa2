#include "doctest.h"

#include "dynavg/rng.hpp"
#include "dynavg/update_rules.hpp"

using namespace dynavg;

TEST_CASE("PA update on hand-checked examples") {
    // No loss, no movement.
    CHECK(pa_update({{1.0, 0.0}, 1}, {2.0, 0.0}) == Vec{2.0, 0.0});
    // tau = loss / ||x||^2 = 1.
    CHECK(pa_update({{1.0, 0.0}, 1}, {0.0, 0.0}) == Vec{1.0, 0.0});
    // loss 0.5 closes the remaining margin exactly.
    CHECK(pa_update({{1.0, 0.0}, 1}, {0.5, 0.0}) == Vec{1.0, 0.0});
}

TEST_CASE("PA update rejects a zero feature vector") {
    CHECK_THROWS_AS(pa_update({{0.0, 0.0}, 1}, {1.0, 1.0}), std::domain_error);
}

TEST_CASE("PA is the projection onto the zero-loss halfspace") {
    Rng64 rng(17);
    for (int i = 0; i < 500; ++i) {
        Vec w = rng.next_gaussian_vec(6);
        scale(w, 4.0 * rng.next_double());
        Vec x = rng.next_unit_vec(6);
        scale(x, 0.2 + 2.0 * rng.next_double());  // non-unit inputs too
        Example z{x, rng.next_double() < 0.5 ? 1 : -1};
        const double loss = hinge_loss(z, w);
        const Vec moved = pa_update(z, w);

        CHECK(hinge_loss(z, moved) <= 1e-9);                      // lands on the halfspace
        CHECK(dist(w, moved) == doctest::Approx(loss / norm(x)).epsilon(1e-9));
        if (loss == 0.0) CHECK(moved == w);
    }
}

TEST_CASE("SGD update on hand-checked examples") {
    const ModelSpaceBounds bounds;
    const Vec w1 = sgd_hinge_update({{1.0, 0.0}, 1}, {0.0, 0.0}, 1, 0.1, bounds);
    CHECK(w1[0] == doctest::Approx(0.1).epsilon(1e-15));
    const Vec w4 = sgd_hinge_update({{1.0, 0.0}, 1}, {0.0, 0.0}, 4, 0.1, bounds);
    CHECK(w4[0] == doctest::Approx(0.05).epsilon(1e-15));
    // Zero loss leaves the model alone.
    CHECK(sgd_hinge_update({{1.0, 0.0}, 1}, {2.0, 0.0}, 1, 0.1, bounds) == Vec{2.0, 0.0});
    CHECK_THROWS_AS(sgd_hinge_update({{1.0, 0.0}, 1}, {0.0, 0.0}, 0, 0.1, bounds),
                    std::invalid_argument);
}

TEST_CASE("SGD step magnitude never exceeds eta_t * ||x||") {
    Rng64 rng(19);
    const ModelSpaceBounds bounds{3.0, 1.0};
    for (int i = 0; i < 400; ++i) {
        Vec w = rng.next_gaussian_vec(5);
        w = project_to_ball(std::move(w), bounds);
        Vec x = rng.next_unit_vec(5);
        scale(x, 0.5 + rng.next_double());
        Example z{x, rng.next_double() < 0.5 ? 1 : -1};
        const std::uint64_t t = 1 + (rng.next_u64() % 100);
        const double eta = 0.2 / std::sqrt(static_cast<double>(t));
        const Vec moved = sgd_hinge_update(z, w, t, 0.2, bounds);
        CHECK(dist(w, moved) <= eta * norm(x) + 1e-12);
        if (hinge_loss(z, w) == 0.0) CHECK(moved == w);
    }
}

TEST_CASE("proportionality probe: PA on unit-norm inputs has gamma = C = 1") {
    const auto report =
        proportionality_probe({RuleKind::PassiveAggressive, 0.01}, 1000, 1, {}, 10);
    CHECK(report.samples == 1000);
    CHECK(std::abs(report.gamma_hat - 1.0) <= 1e-9);
    CHECK(std::abs(report.c_hat - 1.0) <= 1e-9);
}

TEST_CASE("proportionality probe: SGD ratios are positive, ordered and finite") {
    const auto report = proportionality_probe({RuleKind::SgdHinge, 0.01}, 1000, 1, {}, 10);
    CHECK(report.gamma_hat > 0.0);
    CHECK(report.gamma_hat <= report.c_hat);
    CHECK(std::isfinite(report.c_hat));
}

TEST_CASE("proportionality probe is deterministic in the seed") {
    const auto a = proportionality_probe({RuleKind::SgdHinge, 0.05}, 200, 42, {}, 6);
    const auto b = proportionality_probe({RuleKind::SgdHinge, 0.05}, 200, 42, {}, 6);
    CHECK(a.gamma_hat == b.gamma_hat);
    CHECK(a.c_hat == b.c_hat);
    const auto c = proportionality_probe({RuleKind::SgdHinge, 0.05}, 200, 43, {}, 6);
    CHECK(a.c_hat != c.c_hat);
}

TEST_CASE("rule validation") {
    CHECK_THROWS_AS(validate(UpdateRuleKind{RuleKind::SgdHinge, 0.0}), std::invalid_argument);
    CHECK_NOTHROW(validate(UpdateRuleKind{RuleKind::PassiveAggressive, 0.0}));
    CHECK_THROWS_AS(proportionality_probe({RuleKind::PassiveAggressive, 0.01}, 0, 1, {}, 4),
                    std::invalid_argument);
}
