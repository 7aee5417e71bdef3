#pragma once

// Agent motion law: attraction toward the assigned goal plus a short-range
// exponential repulsion between agents, integrated with a synchronous
// explicit first-order step.

#include <algorithm>
#include <cmath>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "swarmsim/error.hpp"
#include "swarmsim/vec2.hpp"

namespace swarmsim {

/// Exponent convention for the inter-agent repulsion term.
/// `linear` uses exp(-|p_i - p_j| / r_s^2); `squared` uses the
/// conventional Gaussian exp(-|p_i - p_j|^2 / r_s^2).
enum class RepulsionExponent { linear, squared };

struct DynamicsParams {
    double k_c = 5.0;     // convergence gain, 1/s
    double k_r = 2.5;     // repulsion gain, 1/s
    double r_s = 0.0575;  // repulsion region, world units
    double dt = 0.01;     // integration step, s
    RepulsionExponent exponent = RepulsionExponent::linear;
};

struct AgentState {
    int index = 0;  // 1-based
    Vec2 position;
    double heading = 0.0;  // fixed at 0 for omnidirectional agents
    double distance_traveled = 0.0;
    Vec2 current_goal;
};

/// Emitted when two agents occupy the identical position: the repulsion
/// term for that pair is the zero vector (the formula's limit), which the
/// engine surfaces in the trace rather than silently absorbing.
struct CoincidenceWarning {
    int agent_a = 0;
    int agent_b = 0;
};

/// Velocity of `agent` under attraction to its goal and repulsion from
/// `others` (which must not contain the agent itself).
inline Vec2 velocity(const AgentState& agent, std::span<const AgentState> others,
                     const DynamicsParams& params,
                     std::vector<CoincidenceWarning>* warnings = nullptr) {
    Vec2 v = -params.k_c * (agent.position - agent.current_goal);
    const double rs_sq = params.r_s * params.r_s;
    for (const AgentState& other : others) {
        const Vec2 diff = agent.position - other.position;
        const double d = diff.norm();
        if (d == 0.0) {
            if (warnings) warnings->push_back({agent.index, other.index});
            continue;  // exp(0) * 0 = 0
        }
        const double arg = params.exponent == RepulsionExponent::linear
                               ? -d / rs_sq
                               : -(d * d) / rs_sq;
        v += params.k_r * std::exp(arg) * diff;
    }
    return v;
}

/// Advance every agent by one step. All velocities are evaluated against
/// the same pre-step snapshot, so the update is order-independent.
/// Throws IntegrationDiverged when any velocity goes non-finite.
inline std::vector<AgentState> step(const std::vector<AgentState>& agents,
                                    const DynamicsParams& params,
                                    std::vector<CoincidenceWarning>* warnings = nullptr) {
    std::vector<AgentState> next = agents;
    std::vector<AgentState> others;
    others.reserve(agents.size() > 0 ? agents.size() - 1 : 0);
    std::vector<CoincidenceWarning> local;

    for (std::size_t i = 0; i < agents.size(); ++i) {
        others.clear();
        for (std::size_t j = 0; j < agents.size(); ++j)
            if (j != i) others.push_back(agents[j]);
        const Vec2 v = velocity(agents[i], others, params, warnings ? &local : nullptr);
        if (!v.finite())
            throw SimError(Err::IntegrationDiverged,
                           "non-finite velocity for agent " + std::to_string(agents[i].index));
        next[i].position = agents[i].position + params.dt * v;
        // Accumulate the realized displacement (post-rounding) so the
        // running total matches a recomputation from recorded positions
        // exactly.
        next[i].distance_traveled += (next[i].position - agents[i].position).norm();
    }

    if (warnings) {
        // Each coincident pair is seen from both sides; keep one copy.
        for (CoincidenceWarning& w : local)
            if (w.agent_a > w.agent_b) std::swap(w.agent_a, w.agent_b);
        std::sort(local.begin(), local.end(), [](auto a, auto b) {
            return std::pair{a.agent_a, a.agent_b} < std::pair{b.agent_a, b.agent_b};
        });
        local.erase(std::unique(local.begin(), local.end(),
                                [](auto a, auto b) {
                                    return a.agent_a == b.agent_a && a.agent_b == b.agent_b;
                                }),
                    local.end());
        warnings->insert(warnings->end(), local.begin(), local.end());
    }
    return next;
}

}  // namespace swarmsim
