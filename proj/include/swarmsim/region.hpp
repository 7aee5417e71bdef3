#pragma once

// Placement of the circular work region in sensed free space. The search
// advances one step from an anchor point, fanning probe directions out
// from the bearing toward the target in 5-degree increments until one
// direction yields a circle with no sensed obstacle point inside it.

#include <cmath>
#include <numbers>
#include <optional>
#include <span>
#include <vector>

#include "swarmsim/error.hpp"
#include "swarmsim/geometry.hpp"
#include "swarmsim/vec2.hpp"

namespace swarmsim {

/// Angular spacing of the probe fan (pi/36, i.e. 5 degrees). Deviations
/// 0, +d, -d, +2d, -2d, ... are tried in order up to +pi (the -pi probe
/// would duplicate it), 72 distinct directions in total.
inline constexpr double kProbeStep = std::numbers::pi / 36.0;

/// True when no cloud point lies strictly inside the circle inflated by
/// `margin`.
inline bool region_admissible(Vec2 center, double r_c, double margin,
                              std::span<const Vec2> cloud) {
    const double clear = r_c + margin;
    for (Vec2 p : cloud)
        if (distance(p, center) < clear) return false;
    return true;
}

/// Place a circle of radius `r_c` one `step` away from the anchor
/// (prev_center when given, otherwise the swarm centroid), picking the
/// admissible direction with the smallest angular deviation from the
/// bearing toward `target`; positive deviation wins ties.
/// Throws NoFreeRegion when all 72 probe directions are blocked.
inline CircleRegion fit_circle(std::span<const Vec2> cloud, Vec2 swarm_centroid, Vec2 target,
                               double r_c, std::optional<Vec2> prev_center, double step,
                               double margin = 0.0) {
    if (!(r_c > 0.0) || !std::isfinite(r_c))
        throw SimError(Err::InvalidRegion, "region radius must be positive and finite");
    if (!(step > 0.0))
        throw SimError(Err::InvalidArgument, "advance step must be positive");

    const Vec2 anchor = prev_center.value_or(swarm_centroid);
    const double base = std::atan2(target.y - anchor.y, target.x - anchor.x);

    auto probe = [&](double deviation) -> std::optional<CircleRegion> {
        const Vec2 center = anchor + step * unit(base + deviation);
        if (region_admissible(center, r_c, margin, cloud)) return CircleRegion{center, r_c};
        return std::nullopt;
    };

    if (auto hit = probe(0.0)) return *hit;
    for (int k = 1; k <= 36; ++k) {
        if (auto hit = probe(k * kProbeStep)) return *hit;
        if (k < 36)  // -pi duplicates +pi
            if (auto hit = probe(-k * kProbeStep)) return *hit;
    }
    throw SimError(Err::NoFreeRegion,
                   "no free direction for a region of radius " + std::to_string(r_c));
}

}  // namespace swarmsim
