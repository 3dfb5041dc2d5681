#pragma once

#include <algorithm>
#include <array>
#include <cmath>

namespace amo {

/// Real 2x2 matrix, row-major: ((a, b), (c, d)).
struct Mat2 {
    double a = 1.0, b = 0.0, c = 0.0, d = 1.0;

    static Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }

    Mat2 operator*(const Mat2& r) const {
        return {a * r.a + b * r.c, a * r.b + b * r.d,
                c * r.a + d * r.c, c * r.b + d * r.d};
    }
    std::array<double, 2> apply(double x, double y) const {
        return {a * x + b * y, c * x + d * y};
    }
    Mat2 scaled(double s) const { return {a * s, b * s, c * s, d * s}; }

    double det() const { return a * d - b * c; }
    double trace() const { return a + d; }
    double max_abs() const {
        return std::max(std::max(std::fabs(a), std::fabs(b)),
                        std::max(std::fabs(c), std::fabs(d)));
    }
    /// Largest singular value, closed form; prescaled so the squares cannot
    /// overflow for representable entries.
    double spectral_norm() const {
        double mx = max_abs();
        if (mx == 0.0) return 0.0;
        double a1 = a / mx, b1 = b / mx, c1 = c / mx, d1 = d / mx;
        double s = a1 * a1 + b1 * b1 + c1 * c1 + d1 * d1;
        double dt = a1 * d1 - b1 * c1;
        double disc = s * s - 4.0 * dt * dt;
        if (disc < 0.0) disc = 0.0;
        return mx * std::sqrt(0.5 * (s + std::sqrt(disc)));
    }
    /// Adjugate inverse; valid for det == 1 matrices.
    Mat2 inverse_unimodular() const { return {d, -b, -c, a}; }
};

/// Matrix with factored magnitude: represented value = exp(log_scale) * m.
struct ScaledMat2 {
    Mat2 m;
    double log_scale = 0.0;
    double log_spectral_norm() const { return log_scale + std::log(m.spectral_norm()); }
};

}  // namespace amo
