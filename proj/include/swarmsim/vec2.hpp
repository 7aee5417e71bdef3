#pragma once

#include <cmath>

namespace swarmsim {

/// 2D point/vector in world units. Doubles throughout; all library code
/// assumes finite components unless an operation states otherwise.
struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    constexpr Vec2() = default;
    constexpr Vec2(double x_, double y_) : x(x_), y(y_) {}

    constexpr Vec2 operator+(Vec2 r) const { return {x + r.x, y + r.y}; }
    constexpr Vec2 operator-(Vec2 r) const { return {x - r.x, y - r.y}; }
    constexpr Vec2 operator*(double s) const { return {x * s, y * s}; }
    constexpr Vec2 operator/(double s) const { return {x / s, y / s}; }
    constexpr Vec2 operator-() const { return {-x, -y}; }
    constexpr Vec2& operator+=(Vec2 r) { x += r.x; y += r.y; return *this; }
    constexpr Vec2& operator-=(Vec2 r) { x -= r.x; y -= r.y; return *this; }

    /// Exact component equality (used for e.g. "center reached target" snaps).
    constexpr bool operator==(const Vec2&) const = default;

    double norm() const { return std::hypot(x, y); }
    constexpr double norm_sq() const { return x * x + y * y; }

    bool finite() const { return std::isfinite(x) && std::isfinite(y); }
};

constexpr Vec2 operator*(double s, Vec2 v) { return v * s; }

constexpr double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }

/// z-component of the 3D cross product; sign gives turn direction.
constexpr double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }

inline double distance(Vec2 a, Vec2 b) { return (a - b).norm(); }

/// Unit vector at world angle `theta` (radians, counterclockwise from +x).
inline Vec2 unit(double theta) { return {std::cos(theta), std::sin(theta)}; }

/// Rotate `v` by `theta` radians about the origin.
inline Vec2 rotated(Vec2 v, double theta) {
    const double c = std::cos(theta), s = std::sin(theta);
    return {c * v.x - s * v.y, s * v.x + c * v.y};
}

}  // namespace swarmsim
