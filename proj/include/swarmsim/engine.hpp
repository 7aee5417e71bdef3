#pragma once

// Simulation engine. Phase 1: fit the work region ahead of the swarm,
// pack it, assign goals, and track until the formation converges; the
// object then loads instantaneously and a master agent is elected.
// Phase 2: every `cadence` ticks the master aggregates all scans, fits
// the next region one step ahead, and broadcasts its center; agents
// rebuild their goals from stored polar offsets and keep tracking. The
// run ends when the region center has been snapped onto the target and
// the formation has converged there.
//
// The engine never unwinds on the expected planning failures; it records
// an error event and returns the partial trace with a matching outcome.

#include <algorithm>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "swarmsim/dynamics.hpp"
#include "swarmsim/error.hpp"
#include "swarmsim/geometry.hpp"
#include "swarmsim/phase1.hpp"
#include "swarmsim/phase2.hpp"
#include "swarmsim/region.hpp"
#include "swarmsim/scenario.hpp"
#include "swarmsim/sensing.hpp"
#include "swarmsim/trace.hpp"

namespace swarmsim {

enum class Outcome {
    Completed,
    NoFreeRegion,
    InsufficientCapacity,
    IntegrationDiverged,
    TickLimit,
    Fault,  // unexpected runtime failure, e.g. an agent entering an obstacle
};

inline const char* outcome_name(Outcome o) {
    switch (o) {
        case Outcome::Completed: return "completed";
        case Outcome::NoFreeRegion: return "no-free-region";
        case Outcome::InsufficientCapacity: return "insufficient-capacity";
        case Outcome::IntegrationDiverged: return "integration-diverged";
        case Outcome::TickLimit: return "tick-limit";
        case Outcome::Fault: return "fault";
    }
    return "unknown";
}

struct RunSummary {
    long total_ticks = 0;  // recorded rows, including the initial state
    double phase1_time = 0.0;
    double phase2_time = 0.0;
    double final_formation_error = 0.0;
    std::vector<double> distance_totals;
    int master = 0;
};

struct RunResult {
    SimTrace trace;
    Outcome outcome = Outcome::Completed;
    std::string message;
    RunSummary summary;
};

/// Mean distance from each agent to its current goal.
inline double formation_error(std::span<const AgentState> agents) {
    if (agents.empty()) return 0.0;
    double sum = 0.0;
    for (const AgentState& a : agents) sum += distance(a.position, a.current_goal);
    return sum / static_cast<double>(agents.size());
}

inline double formation_error(std::span<const AgentState> agents,
                              const GoalAssignment& assignment) {
    if (agents.empty()) return 0.0;
    double sum = 0.0;
    for (std::size_t i = 0; i < agents.size(); ++i)
        sum += distance(agents[i].position, assignment.goals[i]);
    return sum / static_cast<double>(agents.size());
}

/// True when every agent sits inside the footprint placed at the current
/// region center, i.e. the carried object is still fully supported.
inline bool support_coverage(std::span<const AgentState> agents, const ObjectFootprint& footprint,
                             const CircleRegion& circle) {
    const Polygon placed = footprint.shape.translated(circle.center);
    for (const AgentState& a : agents)
        if (!point_in_polygon(a.position, placed)) return false;
    return true;
}

namespace detail {

inline std::string fmt_vec(Vec2 v) { return fmt_double(v.x) + " " + fmt_double(v.y); }

inline std::vector<Vec2> sense_swarm(const std::vector<AgentState>& agents, const SensorRig& rig,
                                     const std::vector<Polygon>& obstacles, long tick) {
    std::vector<ObstaclePointCloud> clouds;
    clouds.reserve(agents.size());
    for (const AgentState& a : agents) {
        const SensorScan s = scan(a.position, a.heading, rig, obstacles, tick);
        clouds.push_back(predict_obstacle_points(s, a.position, a.heading, rig, a.index));
    }
    return aggregate_swarm_cloud(clouds);
}

inline RunResult finish(RunResult result, const Scenario& sc, long load_tick) {
    RunSummary& s = result.summary;
    s.total_ticks = static_cast<long>(result.trace.rows.size());
    if (!result.trace.rows.empty()) {
        const TickRecord& last = result.trace.rows.back();
        s.final_formation_error = last.formation_error;
        s.distance_totals = last.distance_traveled;
        s.phase1_time = load_tick * sc.params.dt;
        s.phase2_time = last.time - s.phase1_time;
        if (last.phase == 1) {  // run ended before the load event
            s.phase1_time = last.time;
            s.phase2_time = 0.0;
        }
    }
    return result;
}

}  // namespace detail

/// Execute a scenario to completion (or until `tick_limit` rows have been
/// recorded). Deterministic: identical scenario + seed produce identical
/// traces.
inline RunResult run(const Scenario& sc, std::optional<long> tick_limit = std::nullopt) {
    RunResult result;
    SimTrace& trace = result.trace;
    trace.n_agents = sc.n_agents;
    trace.dt = sc.params.dt;

    trace.events.push_back({0, "meta",
                            "n_agents=" + std::to_string(sc.n_agents) +
                                " r_c=" + detail::fmt_double(sc.r_c) +
                                " dt=" + detail::fmt_double(sc.params.dt)});
    trace.events.push_back({0, "target", detail::fmt_vec(sc.target)});
    for (const Polygon& poly : sc.obstacles) {
        std::string payload;
        for (Vec2 v : poly.vertices) {
            if (!payload.empty()) payload += ' ';
            payload += detail::fmt_vec(v);
        }
        trace.events.push_back({0, "obstacle", payload});
    }

    std::vector<AgentState> agents;
    agents.reserve(sc.n_agents);
    for (int i = 0; i < sc.n_agents; ++i)
        agents.push_back({i + 1, sc.initial_positions[i], 0.0, 0.0, sc.initial_positions[i]});

    const SensorRig rig{sc.sensors_m, sc.max_range};
    long tick = 0;
    CircleRegion circle;
    std::optional<GoalAssignment> assignment;

    auto record = [&](int phase) {
        TickRecord r;
        r.tick = tick;
        r.time = tick * sc.params.dt;
        r.phase = phase;
        r.positions.reserve(agents.size());
        r.goals.reserve(agents.size());
        r.distance_traveled.reserve(agents.size());
        for (const AgentState& a : agents) {
            r.positions.push_back(a.position);
            r.goals.push_back(a.current_goal);
            r.distance_traveled.push_back(a.distance_traveled);
        }
        if (assignment) r.circle_center = circle.center;
        r.formation_error = formation_error(agents);
        r.support_coverage = assignment && support_coverage(agents, sc.footprint, circle);
        trace.rows.push_back(std::move(r));
    };

    auto step_agents = [&]() {
        std::vector<CoincidenceWarning> warnings;
        agents = step(agents, sc.params, &warnings);
        ++tick;
        for (const CoincidenceWarning& w : warnings)
            trace.events.push_back({tick, "warning",
                                    "coincident agents " + std::to_string(w.agent_a) + " " +
                                        std::to_string(w.agent_b)});
    };

    auto hit_tick_limit = [&]() {
        if (tick_limit && static_cast<long>(trace.rows.size()) >= *tick_limit) {
            trace.events.push_back({tick, "error", "tick-limit reached"});
            result.outcome = Outcome::TickLimit;
            result.message = "tick limit of " + std::to_string(*tick_limit) + " rows reached";
            return true;
        }
        return false;
    };

    long load_tick = 0;
    try {
        // ---- Phase 1: centralized formation planning ----
        const std::vector<Vec2> cloud = detail::sense_swarm(agents, rig, sc.obstacles, tick);
        Vec2 centroid{0, 0};
        for (const AgentState& a : agents) centroid += a.position;
        centroid = centroid / static_cast<double>(agents.size());

        circle = fit_circle(cloud, centroid, sc.target, sc.r_c, std::nullopt, sc.step,
                            sc.clearance_margin);
        trace.events.push_back({0, "plan", "0 " + detail::fmt_vec(circle.center)});

        const TriangleGrid grid = pack_triangles(circle, sc.grid_n);
        const SegmentCensus cens = census(grid, circle, sc.footprint);
        assignment = assign_goals(cens, circle, sc.n_agents);
        for (std::size_t i = 0; i < agents.size(); ++i)
            agents[i].current_goal = assignment->goals[i];

        record(1);
        while (!formation_converged(agents, *assignment, sc.epsilon)) {
            if (hit_tick_limit()) return detail::finish(std::move(result), sc, load_tick);
            step_agents();
            record(1);
        }

        load_tick = tick;
        trace.events.push_back({tick, "load", ""});
        const int master = elect_master(sc.n_agents, sc.seed);
        result.summary.master = master;
        trace.events.push_back({tick, "election", std::to_string(master)});

        // ---- Phase 2: decentralized transport ----
        std::vector<GoalFollower> followers(agents.size());
        for (std::size_t i = 0; i < agents.size(); ++i) {
            followers[i].offset = assignment->polar_offsets[i];
            followers[i].goal = assignment->goals[i];
        }
        long epoch = 0;
        bool at_target = circle.center == sc.target;

        GoalAssignment current = *assignment;  // goals against the live region
        for (;;) {
            if (!at_target && (tick - load_tick) % sc.cadence == 0) {
                const std::vector<Vec2> swarm_cloud =
                    detail::sense_swarm(agents, rig, sc.obstacles, tick);
                std::optional<PlanMessage> plan = plan_step(
                    swarm_cloud, circle, sc.target, sc.step, sc.r_c, epoch, sc.clearance_margin);
                if (!plan && circle.center != sc.target)
                    plan = PlanMessage{sc.target, epoch + 1};  // final snap onto the target
                if (plan) {
                    epoch = plan->epoch;
                    trace.events.push_back(
                        {tick, "plan",
                         std::to_string(epoch) + " " + detail::fmt_vec(plan->new_center)});
                    for (std::size_t i = 0; i < agents.size(); ++i) {
                        apply_plan(followers[i], *plan);
                        agents[i].current_goal = followers[i].goal;
                        current.goals[i] = followers[i].goal;
                    }
                    circle.center = plan->new_center;
                    current.circle = circle;
                    at_target = circle.center == sc.target;
                }
            }
            if (hit_tick_limit()) return detail::finish(std::move(result), sc, load_tick);
            step_agents();
            record(2);
            if (at_target && formation_converged(agents, current, sc.epsilon)) {
                trace.events.push_back({tick, "done", ""});
                break;
            }
        }
    } catch (const SimError& e) {
        trace.events.push_back({tick, "error", e.what()});  // what() starts with the code name
        switch (e.code()) {
            case Err::NoFreeRegion: result.outcome = Outcome::NoFreeRegion; break;
            case Err::InsufficientCapacity: result.outcome = Outcome::InsufficientCapacity; break;
            case Err::IntegrationDiverged: result.outcome = Outcome::IntegrationDiverged; break;
            default: result.outcome = Outcome::Fault; break;
        }
        result.message = e.what();
    }
    return detail::finish(std::move(result), sc, load_tick);
}

}  // namespace swarmsim
