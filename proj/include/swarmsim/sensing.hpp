#pragma once

// Idealized range sensing: each agent carries m distance sensors spaced
// 2*pi/m apart. A scan ray-casts every sensor direction against the
// environment polygons; hits convert back into world-frame obstacle
// points that the planners aggregate across the swarm.

#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <vector>

#include "swarmsim/error.hpp"
#include "swarmsim/geometry.hpp"
#include "swarmsim/vec2.hpp"

namespace swarmsim {

struct SensorRig {
    int m = 8;               // sensor count; spacing is exactly 2*pi/m
    double max_range = 10.0; // readings beyond this are dropped, not clipped

    /// Body-frame angle of sensor j (1-based).
    double sensor_angle(int j) const {
        return (j - 1) * (2.0 * std::numbers::pi / m);
    }
};

/// One scan: readings[j-1] holds the distance measured by sensor j, or
/// nullopt when nothing was hit within max_range. A non-detection stays
/// absent so it can never masquerade as an obstacle point downstream.
struct SensorScan {
    std::vector<std::optional<double>> readings;
    long timestamp = 0;
};

/// World-frame obstacle points reconstructed from one agent's scan, in
/// sensor order.
struct ObstaclePointCloud {
    std::vector<Vec2> points;
    int source_agent = 0;
};

namespace detail {

/// Distance along the ray (origin, dir) to segment [a, b], if any.
/// `dir` must be a unit vector. Collinear overlaps report the nearest
/// endpoint in front of the origin.
inline std::optional<double> ray_segment_distance(Vec2 origin, Vec2 dir, Vec2 a, Vec2 b) {
    const Vec2 e = b - a;
    const Vec2 ao = a - origin;
    const double denom = cross(dir, e);
    if (denom == 0.0) {
        if (cross(ao, dir) != 0.0) return std::nullopt;  // parallel, offset
        const double ta = dot(ao, dir);
        const double tb = dot(b - origin, dir);
        const double lo = std::min(ta, tb), hi = std::max(ta, tb);
        if (hi < 0.0) return std::nullopt;  // entirely behind
        return std::max(lo, 0.0);
    }
    const double t = cross(ao, e) / denom;
    const double u = cross(ao, dir) / denom;
    if (t < 0.0 || u < 0.0 || u > 1.0) return std::nullopt;
    return t;
}

}  // namespace detail

/// Ray-cast all m sensors from `position` with the rig rotated by
/// `heading`. Throws AgentInObstacle when the position is inside (or on
/// the boundary of) any obstacle.
inline SensorScan scan(Vec2 position, double heading, const SensorRig& rig,
                       const std::vector<Polygon>& obstacles, long timestamp = 0) {
    for (const Polygon& poly : obstacles)
        if (point_in_polygon(position, poly))
            throw SimError(Err::AgentInObstacle, "scan origin lies inside an obstacle");

    SensorScan out;
    out.timestamp = timestamp;
    out.readings.resize(rig.m);
    for (int j = 1; j <= rig.m; ++j) {
        const Vec2 dir = unit(rig.sensor_angle(j) + heading);
        double nearest = std::numeric_limits<double>::infinity();
        for (const Polygon& poly : obstacles) {
            const std::size_t nv = poly.vertices.size();
            for (std::size_t i = 0; i < nv; ++i) {
                const auto t = detail::ray_segment_distance(
                    position, dir, poly.vertices[i], poly.vertices[(i + 1) % nv]);
                if (t && *t > 0.0 && *t < nearest) nearest = *t;
            }
        }
        if (nearest <= rig.max_range) out.readings[j - 1] = nearest;
    }
    return out;
}

/// Convert present readings into world-frame obstacle points:
/// point_j = position + d_j * (cos((j-1)*2pi/m + heading), sin(...)).
inline ObstaclePointCloud predict_obstacle_points(const SensorScan& scan_result, Vec2 position,
                                                  double heading, const SensorRig& rig,
                                                  int source_agent = 0) {
    ObstaclePointCloud cloud;
    cloud.source_agent = source_agent;
    for (int j = 1; j <= rig.m; ++j) {
        const auto& d = scan_result.readings[j - 1];
        if (!d) continue;
        cloud.points.push_back(position + *d * unit(rig.sensor_angle(j) + heading));
    }
    return cloud;
}

/// Swarm-wide sensed zone: concatenation in agent order (each cloud is
/// already in sensor order).
inline std::vector<Vec2> aggregate_swarm_cloud(const std::vector<ObstaclePointCloud>& clouds) {
    std::vector<Vec2> all;
    for (const ObstaclePointCloud& c : clouds)
        all.insert(all.end(), c.points.begin(), c.points.end());
    return all;
}

}  // namespace swarmsim
