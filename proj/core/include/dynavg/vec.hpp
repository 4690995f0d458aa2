#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace dynavg {

/// Dense real vector. Models and feature vectors share this representation;
/// the dimension is fixed for the lifetime of a run.
using Vec = std::vector<double>;

inline void require_same_dim(const Vec& a, const Vec& b, const char* where) {
    if (a.size() != b.size()) {
        throw std::invalid_argument(std::string(where) + ": dimension mismatch (" +
                                    std::to_string(a.size()) + " vs " +
                                    std::to_string(b.size()) + ")");
    }
}

inline double dot(const Vec& a, const Vec& b) {
    require_same_dim(a, b, "dot");
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline double norm_sq(const Vec& a) {
    double s = 0.0;
    for (double v : a) s += v * v;
    return s;
}

inline double norm(const Vec& a) { return std::sqrt(norm_sq(a)); }

inline double dist_sq(const Vec& a, const Vec& b) {
    require_same_dim(a, b, "dist_sq");
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return s;
}

inline double dist(const Vec& a, const Vec& b) { return std::sqrt(dist_sq(a, b)); }

/// w += c * x
inline void add_scaled(Vec& w, double c, const Vec& x) {
    require_same_dim(w, x, "add_scaled");
    for (std::size_t i = 0; i < w.size(); ++i) w[i] += c * x[i];
}

inline void scale(Vec& w, double c) {
    for (double& v : w) v *= c;
}

inline bool all_finite(const Vec& a) {
    for (double v : a) {
        if (!std::isfinite(v)) return false;
    }
    return true;
}

}  // namespace dynavg
