#pragma once

// Computational-geometry kernel: the circular work region, its inscribed
// square, the triangle-packing grid whose centroids serve as candidate
// goal points, and the point/segment predicates the planners rely on.

#include <array>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <vector>

#include "swarmsim/error.hpp"
#include "swarmsim/vec2.hpp"

namespace swarmsim {

/// Circular work region: all formation goals live inside it.
struct CircleRegion {
    Vec2 center;
    double radius = 0.0;
};

/// Axis-rotated square whose four corners lie on the generating circle.
/// Corners are counterclockwise starting at the upper-right (angle pi/4).
struct InscribedSquare {
    std::array<Vec2, 4> corners;
    double side_length = 0.0;

    /// Lower-left corner; the triangle grid is anchored here.
    Vec2 lower_left() const { return corners[2]; }
};

/// One triangle centroid of the packing. `tag` is 'a' for the lower-left
/// right triangle of a sub-square, 'b' for the upper-right one. `offset`
/// is the centroid relative to the circle center; it depends only on
/// (r_c, n, q1, q2, tag), so grids at different centers share identical
/// offsets bit for bit.
struct TriangleCentroid {
    int q1 = 0;  // sub-square row, 1..n
    int q2 = 0;  // sub-square column, 1..n
    char tag = 'a';
    Vec2 point;
    Vec2 offset;
};

/// Packing of the inscribed square into n^2 sub-squares, each split along
/// its diagonal into two congruent right isosceles triangles. The 2*n^2
/// centroids are listed row-major by (q1, q2), tag 'a' before 'b'.
struct TriangleGrid {
    int n = 0;
    double sub_square_side = 0.0;  // l_ss = sqrt(2)*r_c / n
    Vec2 anchor;                   // lower-left corner of the inscribed square
    std::vector<TriangleCentroid> centroids;
};

/// Simple polygon, counterclockwise vertex order, used for obstacles and
/// the object footprint.
struct Polygon {
    std::vector<Vec2> vertices;

    /// Shoelace area; positive for counterclockwise order.
    double signed_area() const {
        double a = 0.0;
        const std::size_t n = vertices.size();
        for (std::size_t i = 0; i < n; ++i) {
            const Vec2 p = vertices[i], q = vertices[(i + 1) % n];
            a += cross(p, q);
        }
        return 0.5 * a;
    }

    Polygon translated(Vec2 offset) const {
        Polygon out;
        out.vertices.reserve(vertices.size());
        for (Vec2 v : vertices) out.vertices.push_back(v + offset);
        return out;
    }

    /// Largest pairwise vertex distance (the polygon's diameter).
    double max_diameter() const {
        double best = 0.0;
        for (std::size_t i = 0; i < vertices.size(); ++i)
            for (std::size_t j = i + 1; j < vertices.size(); ++j)
                best = std::max(best, distance(vertices[i], vertices[j]));
        return best;
    }
};

/// Square of side sqrt(2)*r with corners on the circle at angles
/// pi/4 + k*pi/2. Throws InvalidRegion for a degenerate circle.
inline InscribedSquare inscribe_square(const CircleRegion& circle) {
    if (!circle.center.finite() || !std::isfinite(circle.radius) || circle.radius <= 0.0)
        throw SimError(Err::InvalidRegion, "circle must have finite center and positive radius");
    InscribedSquare sq;
    for (int k = 0; k < 4; ++k) {
        const double angle = std::numbers::pi / 4 + k * std::numbers::pi / 2;
        sq.corners[k] = circle.center + circle.radius * unit(angle);
    }
    sq.side_length = std::numbers::sqrt2 * circle.radius;
    return sq;
}

/// Divide the inscribed square into n^2 sub-squares of side l_ss and emit
/// both triangle centroids of every sub-square. The grid is anchored at
/// the square's lower-left corner, center - (l_ss*n/2, l_ss*n/2), so the
/// packing tiles the square exactly and every centroid falls strictly
/// inside the circle.
inline TriangleGrid pack_triangles(const CircleRegion& circle, int n) {
    if (n < 1) throw SimError(Err::InvalidGridSize, "grid resolution n must be >= 1");
    const InscribedSquare sq = inscribe_square(circle);

    TriangleGrid grid;
    grid.n = n;
    grid.sub_square_side = sq.side_length / n;
    grid.anchor = circle.center - Vec2{sq.side_length / 2, sq.side_length / 2};
    grid.centroids.reserve(static_cast<std::size_t>(2) * n * n);

    const double l = grid.sub_square_side;
    const Vec2 anchor_offset{-sq.side_length / 2, -sq.side_length / 2};
    for (int q1 = 1; q1 <= n; ++q1) {
        for (int q2 = 1; q2 <= n; ++q2) {
            // Centroid of {LL, LR, UL} and of {LR, UR, UL} respectively.
            const Vec2 rel_a = anchor_offset + l / 3.0 * Vec2{3.0 * q2 - 2.0, 3.0 * q1 - 2.0};
            const Vec2 rel_b = anchor_offset + l / 3.0 * Vec2{3.0 * q2 - 1.0, 3.0 * q1 - 1.0};
            grid.centroids.push_back({q1, q2, 'a', circle.center + rel_a, rel_a});
            grid.centroids.push_back({q1, q2, 'b', circle.center + rel_b, rel_b});
        }
    }
    return grid;
}

/// Largest grid resolution for which adjacent centroids stay farther
/// apart than the inter-agent repulsion region allows: floor(r_c / (3*r_s)).
/// Throws RegionTooSmall when even n = 1 would violate the bound.
inline int max_grid_resolution(double r_c, double r_s) {
    if (!(r_c > 0.0) || !(r_s > 0.0))
        throw SimError(Err::InvalidArgument, "radii must be positive");
    const double bound = r_c / (3.0 * r_s);
    if (bound < 1.0)
        throw SimError(Err::RegionTooSmall,
                       "no stable packing exists: r_c / (3*r_s) < 1");
    return static_cast<int>(std::floor(bound));
}

namespace detail {

inline bool on_segment(Vec2 p, Vec2 a, Vec2 b) {
    if (cross(b - a, p - a) != 0.0) return false;
    return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) &&
           std::min(a.y, b.y) <= p.y && p.y <= std::max(a.y, b.y);
}

}  // namespace detail

/// Boundary-inclusive point-in-polygon test (even-odd rule). A point on
/// an edge or vertex counts as inside so footprint coverage is never
/// undercounted at exact boundaries.
inline bool point_in_polygon(Vec2 p, const Polygon& poly) {
    const std::size_t n = poly.vertices.size();
    if (n < 3 || poly.signed_area() == 0.0)
        throw SimError(Err::InvalidPolygon, "polygon needs >= 3 vertices and nonzero area");

    for (std::size_t i = 0; i < n; ++i)
        if (detail::on_segment(p, poly.vertices[i], poly.vertices[(i + 1) % n]))
            return true;

    bool inside = false;
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2 a = poly.vertices[i], b = poly.vertices[(i + 1) % n];
        if ((a.y > p.y) != (b.y > p.y)) {
            const double x_int = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
            if (p.x < x_int) inside = !inside;
        }
    }
    return inside;
}

/// Quadrant segment of `p` about `center`, numbered counterclockwise from
/// the (+x, +y) quadrant. Boundary rays are assigned deterministically:
///   S1 = {dx >= 0, dy > 0} u {dx > 0, dy = 0}
///   S2 = {dx < 0, dy >= 0}
///   S3 = {dx <= 0, dy < 0}
///   S4 = {dx > 0, dy <= 0} minus S1
/// so every non-center point lands in exactly one segment.
inline int quadrant_of(Vec2 p, Vec2 center) {
    const double dx = p.x - center.x, dy = p.y - center.y;
    if (dx == 0.0 && dy == 0.0)
        throw SimError(Err::AmbiguousSegment, "point coincides with the region center");
    if ((dx >= 0.0 && dy > 0.0) || (dx > 0.0 && dy == 0.0)) return 1;
    if (dx < 0.0 && dy >= 0.0) return 2;
    if (dx <= 0.0 && dy < 0.0) return 3;
    return 4;
}

/// Regular polygon approximating a disc: `segments` vertices on radius
/// `radius` around `center`. Used for disc-shaped object footprints.
inline Polygon regular_polygon(Vec2 center, double radius, int segments) {
    if (segments < 3 || !(radius > 0.0))
        throw SimError(Err::InvalidPolygon, "disc needs radius > 0 and >= 3 segments");
    Polygon poly;
    poly.vertices.reserve(segments);
    for (int i = 0; i < segments; ++i) {
        const double angle = 2.0 * std::numbers::pi * i / segments;
        poly.vertices.push_back(center + radius * unit(angle));
    }
    return poly;
}

/// Full validity check used at scenario load: vertex count, orientation,
/// nonzero area, and pairwise edge non-intersection.
inline void validate_polygon(const Polygon& poly) {
    const std::size_t n = poly.vertices.size();
    if (n < 3) throw SimError(Err::InvalidPolygon, "polygon needs at least 3 vertices");
    for (Vec2 v : poly.vertices)
        if (!v.finite()) throw SimError(Err::InvalidPolygon, "polygon vertex is not finite");
    const double area = poly.signed_area();
    if (area == 0.0) throw SimError(Err::InvalidPolygon, "polygon has zero area");
    if (area < 0.0) throw SimError(Err::InvalidPolygon, "polygon must be counterclockwise");

    // Proper crossing between any two non-adjacent edges makes the polygon
    // non-simple. Adjacent edges may only touch at their shared vertex.
    auto segments_cross = [](Vec2 a, Vec2 b, Vec2 c, Vec2 d) {
        const double d1 = cross(b - a, c - a);
        const double d2 = cross(b - a, d - a);
        const double d3 = cross(d - c, a - c);
        const double d4 = cross(d - c, b - c);
        if (((d1 > 0) != (d2 > 0)) && ((d3 > 0) != (d4 > 0)) && d1 != d2 && d3 != d4)
            return true;
        return false;
    };
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const bool adjacent = (j == i + 1) || (i == 0 && j == n - 1);
            if (adjacent) continue;
            if (segments_cross(poly.vertices[i], poly.vertices[(i + 1) % n],
                               poly.vertices[j], poly.vertices[(j + 1) % n]))
                throw SimError(Err::InvalidPolygon, "polygon edges self-intersect");
        }
    }
}

}  // namespace swarmsim
