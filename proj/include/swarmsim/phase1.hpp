#pragma once

// Centralized formation planning: place the region, pack it with triangle
// centroids, count the centroids each quadrant segment contributes under
// the object footprint, and hand out goals farthest-first so the load is
// split evenly between the two best-covered segments.

#include <algorithm>
#include <array>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "swarmsim/dynamics.hpp"
#include "swarmsim/error.hpp"
#include "swarmsim/geometry.hpp"
#include "swarmsim/phase2.hpp"
#include "swarmsim/region.hpp"
#include "swarmsim/vec2.hpp"

namespace swarmsim {

/// Object to be carried, expressed relative to a reference point that is
/// placed at the region center during planning.
struct ObjectFootprint {
    Polygon shape;
    double area = 0.0;

    static ObjectFootprint from_polygon(Polygon shape) {
        ObjectFootprint f;
        f.area = shape.signed_area();
        f.shape = std::move(shape);
        return f;
    }
};

/// Per-segment centroid census: counts[i] is the number of grid centroids
/// lying both in quadrant segment i+1 and inside the footprint; members
/// keeps those centroids in grid order.
struct SegmentCensus {
    std::array<int, 4> counts{};
    std::array<std::vector<TriangleCentroid>, 4> members;
};

/// Final Phase-1 product: one goal per agent (agent i gets goals[i-1]),
/// the polar offsets that let agents re-derive goals decentrally, and the
/// segment each goal came from.
struct GoalAssignment {
    std::vector<Vec2> goals;
    std::vector<PolarOffset> polar_offsets;
    std::vector<int> source_segments;
    CircleRegion circle;
};

/// Count grid centroids per quadrant segment, keeping only those inside
/// the footprint placed at the region center.
inline SegmentCensus census(const TriangleGrid& grid, const CircleRegion& circle,
                            const ObjectFootprint& footprint) {
    const Polygon placed = footprint.shape.translated(circle.center);
    SegmentCensus out;
    for (const TriangleCentroid& c : grid.centroids) {
        if (!point_in_polygon(c.point, placed)) continue;
        const int seg = quadrant_of(c.point, circle.center);
        out.counts[seg - 1] += 1;
        out.members[seg - 1].push_back(c);
    }
    return out;
}

/// Assign goals to agents 1..N. The two segments with the largest counts
/// are selected (lower index wins ties); within a segment centroids are
/// taken farthest-from-center first (grid order on exact distance ties).
/// Agents 1..ceil(N/2) draw from the top segment, the rest from the
/// second. Throws InsufficientCapacity when either quota cannot be met.
inline GoalAssignment assign_goals(const SegmentCensus& cens, const CircleRegion& circle, int n_agents) {
    if (n_agents < 1) throw SimError(Err::InvalidArgument, "need at least one agent");

    std::array<int, 4> order{0, 1, 2, 3};
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return cens.counts[a] > cens.counts[b]; });
    const int top = order[0], second = order[1];
    const int need_top = (n_agents + 1) / 2;
    const int need_second = n_agents / 2;
    if (cens.counts[top] < need_top || cens.counts[second] < need_second)
        throw SimError(Err::InsufficientCapacity,
                       "segments hold " + std::to_string(cens.counts[top]) + "+" +
                           std::to_string(cens.counts[second]) + " centroids but " +
                           std::to_string(need_top) + "+" + std::to_string(need_second) +
                           " goals are needed; increase the grid resolution toward its "
                           "stability bound or enlarge the region radius");

    // Sort on the center-relative offsets: they are identical for grids at
    // any center, so exact distance ties resolve the same way (by grid
    // order) wherever the region currently sits.
    auto farthest_first = [&](int seg) {
        std::vector<TriangleCentroid> sorted = cens.members[seg];
        std::stable_sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) {
            return a.offset.norm() > b.offset.norm();
        });
        return sorted;
    };
    const std::vector<TriangleCentroid> top_sorted = farthest_first(top);
    const std::vector<TriangleCentroid> second_sorted = farthest_first(second);

    GoalAssignment out;
    out.circle = circle;
    out.goals.reserve(n_agents);
    for (int i = 0; i < n_agents; ++i) {
        const bool from_top = i < need_top;
        const TriangleCentroid& c = from_top ? top_sorted[i] : second_sorted[i - need_top];
        out.goals.push_back(c.point);
        out.polar_offsets.push_back(compute_offset(c.point, circle.center));
        out.source_segments.push_back((from_top ? top : second) + 1);
    }
    return out;
}

/// True once every agent is within epsilon of its assigned goal
/// (agent i pairs with goals[i-1]).
inline bool formation_converged(std::span<const AgentState> agents,
                                const GoalAssignment& assignment, double epsilon) {
    for (std::size_t i = 0; i < agents.size(); ++i)
        if (distance(agents[i].position, assignment.goals[i]) >= epsilon) return false;
    return true;
}

/// Uniform draw of the master agent index from [1, N], fully determined
/// by the seed (mt19937_64 is bit-exact across platforms).
inline int elect_master(int n_agents, std::uint64_t seed) {
    if (n_agents < 1) throw SimError(Err::InvalidArgument, "need at least one agent");
    std::mt19937_64 gen(seed);
    return 1 + static_cast<int>(gen() % static_cast<std::uint64_t>(n_agents));
}

}  // namespace swarmsim
