#pragma once

// Decentralized transport protocol. After the formation is loaded, every
// agent remembers only the polar offset of its goal from the region
// center. The master plans the next region and broadcasts its center;
// each agent rebuilds its goal locally from offset + broadcast, so the
// whole goal set translates rigidly from region to region.

#include <cmath>
#include <optional>
#include <span>

#include "swarmsim/geometry.hpp"
#include "swarmsim/region.hpp"
#include "swarmsim/vec2.hpp"

namespace swarmsim {

/// Distance and full-quadrant bearing of a goal from the region center.
/// alpha is in (-pi, pi].
struct PolarOffset {
    double r = 0.0;
    double alpha = 0.0;
};

/// Master broadcast: the next region center. Epochs increase strictly;
/// agents drop anything stale.
struct PlanMessage {
    Vec2 new_center;
    long epoch = 0;
};

/// Polar offset of `goal` about `center`. goal == center yields (0, 0).
inline PolarOffset compute_offset(Vec2 goal, Vec2 center) {
    const Vec2 d = goal - center;
    return {d.norm(), std::atan2(d.y, d.x)};
}

/// Reconstruct the goal inside the broadcast region.
inline Vec2 next_goal(const PolarOffset& offset, const PlanMessage& plan) {
    return plan.new_center + offset.r * unit(offset.alpha);
}

/// Per-agent receive state for the broadcast protocol.
struct GoalFollower {
    PolarOffset offset;
    long last_epoch = 0;
    Vec2 goal;
};

/// Apply a broadcast if it is newer than anything already applied.
/// Returns false (and changes nothing) for stale or duplicate epochs.
inline bool apply_plan(GoalFollower& follower, const PlanMessage& plan) {
    if (plan.epoch <= follower.last_epoch) return false;
    follower.last_epoch = plan.epoch;
    follower.goal = next_goal(follower.offset, plan);
    return true;
}

/// One master planning step. Returns nullopt once the current center is
/// within one step of the target (arrival); otherwise fits the next
/// region ahead and wraps it in a broadcast with epoch prev_epoch + 1.
/// NoFreeRegion propagates when the swarm is walled in.
inline std::optional<PlanMessage> plan_step(std::span<const Vec2> aggregate_cloud,
                                            const CircleRegion& current, Vec2 target,
                                            double step, double r_c, long prev_epoch,
                                            double margin = 0.0) {
    if (distance(current.center, target) <= step) return std::nullopt;
    const CircleRegion next =
        fit_circle(aggregate_cloud, current.center, target, r_c, current.center, step, margin);
    return PlanMessage{next.center, prev_epoch + 1};
}

}  // namespace swarmsim
