#pragma once

// Test-only oracles, kept independent of the library code paths they
// check.

#include <cmath>
#include <random>
#include <vector>

#include "swarmsim/geometry.hpp"
#include "swarmsim/vec2.hpp"

namespace oracles {

using swarmsim::Vec2;

/// Independent triangle-centroid oracle: build the (q1, q2) sub-square's
/// corners straight from the anchor and average the three vertices of the
/// requested triangle.
inline Vec2 centroid_by_vertex_mean(Vec2 anchor, double l, int q1, int q2, char tag) {
    const Vec2 ll = anchor + Vec2{(q2 - 1) * l, (q1 - 1) * l};
    const Vec2 lr = anchor + Vec2{q2 * l, (q1 - 1) * l};
    const Vec2 ur = anchor + Vec2{q2 * l, q1 * l};
    const Vec2 ul = anchor + Vec2{(q2 - 1) * l, q1 * l};
    if (tag == 'a') return (ll + lr + ul) / 3.0;
    return (lr + ur + ul) / 3.0;
}

/// Independent quadrant predicates mirroring the documented boundary
/// rules; used to show each direction satisfies exactly one of them.
inline int quadrant_membership_count(Vec2 p, Vec2 center, int* which = nullptr) {
    const double dx = p.x - center.x, dy = p.y - center.y;
    const bool s1 = (dx >= 0 && dy > 0) || (dx > 0 && dy == 0);
    const bool s2 = dx < 0 && dy >= 0;
    const bool s3 = dx <= 0 && dy < 0;
    const bool s4 = (dx > 0 && dy <= 0) && !s1;
    const int count = int(s1) + int(s2) + int(s3) + int(s4);
    if (which) *which = s1 ? 1 : s2 ? 2 : s3 ? 3 : s4 ? 4 : 0;
    return count;
}

/// Analytic ray-segment intersection for sensing cross-checks: distance
/// along (origin, angle) to the vertical segment x = wall_x, y in
/// [y_lo, y_hi], if hit.
inline double vertical_wall_hit(Vec2 origin, double angle, double wall_x, double y_lo,
                                double y_hi) {
    const double c = std::cos(angle);
    if (c == 0.0) return -1.0;
    const double t = (wall_x - origin.x) / c;
    if (t <= 0.0) return -1.0;
    const double y = origin.y + t * std::sin(angle);
    if (y < y_lo || y > y_hi) return -1.0;
    return t;
}

/// Shortest distance from p to the boundary of a polygon.
inline double distance_to_polygon_boundary(Vec2 p, const swarmsim::Polygon& poly) {
    double best = std::numeric_limits<double>::infinity();
    const std::size_t n = poly.vertices.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2 a = poly.vertices[i], b = poly.vertices[(i + 1) % n];
        const Vec2 e = b - a;
        const double len_sq = e.norm_sq();
        double t = len_sq > 0 ? dot(p - a, e) / len_sq : 0.0;
        t = std::clamp(t, 0.0, 1.0);
        best = std::min(best, distance(p, a + t * e));
    }
    return best;
}

inline std::mt19937_64 rng(std::uint64_t seed) { return std::mt19937_64(seed); }

inline double uniform(std::mt19937_64& gen, double lo, double hi) {
    // Portable uniform double from the raw 64-bit stream.
    const double u = static_cast<double>(gen() >> 11) * 0x1.0p-53;
    return lo + u * (hi - lo);
}

inline int uniform_int(std::mt19937_64& gen, int lo, int hi) {
    return lo + static_cast<int>(gen() % static_cast<std::uint64_t>(hi - lo + 1));
}

}  // namespace oracles
