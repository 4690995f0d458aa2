#include "dynavg/model.hpp"

#include <cmath>
#include <stdexcept>

namespace dynavg {

void validate(const ModelSpaceBounds& bounds) {
    if (!(std::isfinite(bounds.model_radius) && bounds.model_radius > 0.0))
        throw std::invalid_argument("model_radius must be finite and > 0");
    if (!(std::isfinite(bounds.input_radius) && bounds.input_radius > 0.0))
        throw std::invalid_argument("input_radius must be finite and > 0");
}

double hinge_loss(const Example& z, const Vec& w) {
    require_same_dim(z.x, w, "hinge_loss");
    const double margin = static_cast<double>(z.y) * dot(w, z.x);
    return std::max(0.0, 1.0 - margin);
}

Vec project_to_ball(Vec w, const ModelSpaceBounds& bounds) {
    const double n = norm(w);
    if (n > bounds.model_radius) scale(w, bounds.model_radius / n);
    return w;
}

}  // namespace dynavg
