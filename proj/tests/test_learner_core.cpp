#include "doctest.h"

#include "dynavg/model.hpp"
#include "dynavg/rng.hpp"

using namespace dynavg;

TEST_CASE("hinge loss on hand-checked examples") {
    CHECK(hinge_loss({{1.0, 0.0}, 1}, {0.0, 0.0}) == doctest::Approx(1.0));
    CHECK(hinge_loss({{1.0, 0.0}, 1}, {2.0, 0.0}) == doctest::Approx(0.0));
    CHECK(hinge_loss({{1.0, 0.0}, -1}, {1.0, 0.0}) == doctest::Approx(2.0));
}

TEST_CASE("hinge loss rejects dimension mismatch") {
    CHECK_THROWS_AS(hinge_loss({{1.0, 0.0, 0.0}, 1}, {1.0, 0.0}), std::invalid_argument);
}

TEST_CASE("hinge loss is zero exactly when the margin reaches one") {
    Rng64 rng(7);
    for (int i = 0; i < 500; ++i) {
        Vec w = rng.next_gaussian_vec(5);
        scale(w, 3.0 * rng.next_double());
        Example z{rng.next_unit_vec(5), rng.next_double() < 0.5 ? 1 : -1};
        const double margin = z.y * dot(w, z.x);
        const double loss = hinge_loss(z, w);
        CHECK(loss >= 0.0);
        if (margin >= 1.0) {
            CHECK(loss == 0.0);
        } else {
            CHECK(loss > 0.0);
        }
    }
}

TEST_CASE("hinge loss is convex in the model") {
    Rng64 rng(11);
    for (int i = 0; i < 300; ++i) {
        Vec w1 = rng.next_gaussian_vec(4);
        Vec w2 = rng.next_gaussian_vec(4);
        Example z{rng.next_unit_vec(4), rng.next_double() < 0.5 ? 1 : -1};
        const double lambda = rng.next_double();
        Vec mix(4);
        for (int j = 0; j < 4; ++j) mix[j] = lambda * w1[j] + (1.0 - lambda) * w2[j];
        CHECK(hinge_loss(z, mix) <=
              lambda * hinge_loss(z, w1) + (1.0 - lambda) * hinge_loss(z, w2) + 1e-9);
    }
}

TEST_CASE("ball projection on hand-checked examples") {
    const ModelSpaceBounds unit{1.0, 1.0};
    CHECK(project_to_ball({0.3, 0.4}, unit) == Vec{0.3, 0.4});

    const Vec scaled = project_to_ball({3.0, 4.0}, unit);
    CHECK(scaled[0] == doctest::Approx(0.6).epsilon(1e-12));
    CHECK(scaled[1] == doctest::Approx(0.8).epsilon(1e-12));

    CHECK(project_to_ball({0.0, 0.0}, unit) == Vec{0.0, 0.0});
}

TEST_CASE("ball projection is idempotent and norm-bounded") {
    Rng64 rng(13);
    const ModelSpaceBounds bounds{2.5, 1.0};
    for (int i = 0; i < 300; ++i) {
        Vec w = rng.next_gaussian_vec(6);
        scale(w, 5.0 * rng.next_double());
        const Vec once = project_to_ball(w, bounds);
        const Vec twice = project_to_ball(once, bounds);
        CHECK(norm(once) <= bounds.model_radius + 1e-12);
        for (int j = 0; j < 6; ++j) CHECK(std::abs(once[j] - twice[j]) <= 1e-12);
    }
}

TEST_CASE("bounds validation") {
    CHECK_THROWS_AS(validate(ModelSpaceBounds{0.0, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(validate(ModelSpaceBounds{1.0, -1.0}), std::invalid_argument);
    CHECK_NOTHROW(validate(ModelSpaceBounds{}));
}
