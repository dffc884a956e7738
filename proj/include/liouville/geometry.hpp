#pragma once

#include <cmath>

namespace liouville {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2() = default;
    Vec2(double x_, double y_) : x(x_), y(y_) {}

    Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
    Vec2 operator/(double s) const { return {x / s, y / s}; }

    double dot(Vec2 o) const { return x * o.x + y * o.y; }
    double norm() const { return std::hypot(x, y); }
    double norm2() const { return x * x + y * y; }
};

inline Vec2 operator*(double s, Vec2 v) { return v * s; }

inline Vec2 polar_point(double r, double theta) {
    return {r * std::cos(theta), r * std::sin(theta)};
}

// ln(1 + r^2) without overflow of r^2 for large r.
inline double log1p_sq(double r) {
    double a = std::fabs(r);
    if (a > 1e150) return 2.0 * std::log(a);
    if (a > 1e8) return 2.0 * std::log(a) + std::log1p(1.0 / (a * a));
    return std::log1p(a * a);
}

// ln|1 + z| for complex z given as (re, im), stable for tiny and huge |z|.
inline double log_abs_1p(double re, double im) {
    double m2 = re * re + im * im;
    if (m2 <= 0.25) return 0.5 * std::log1p(2.0 * re + m2);
    if (m2 >= 4.0) {
        // ln|z| + ln|1 + 1/z|, with 1/z = conj(z)/|z|^2
        return 0.5 * std::log(m2) + 0.5 * std::log1p((2.0 * re + 1.0) / m2);
    }
    double a = 1.0 + re;
    return 0.5 * std::log(a * a + im * im);
}

}  // namespace liouville
