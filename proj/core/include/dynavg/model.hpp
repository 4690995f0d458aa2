#pragma once

#include "dynavg/vec.hpp"

namespace dynavg {

/// A labeled input: feature vector x plus binary label y in {-1, +1}.
struct Example {
    Vec x;
    int y = 1;
};

/// Radii of the admissible model ball and of the input space. Both must be
/// finite and strictly positive so that loss-proportionality constants stay
/// bounded.
struct ModelSpaceBounds {
    double model_radius = 10.0;
    double input_radius = 1.0;
};

void validate(const ModelSpaceBounds& bounds);

/// max(0, 1 - y * <w, x>). Throws std::invalid_argument on dimension mismatch.
double hinge_loss(const Example& z, const Vec& w);

/// Returns w unchanged if ||w|| <= model_radius, otherwise w scaled back onto
/// the ball surface. Idempotent.
Vec project_to_ball(Vec w, const ModelSpaceBounds& bounds);

}  // namespace dynavg
