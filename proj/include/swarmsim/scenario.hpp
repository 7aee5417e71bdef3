#pragma once

// Scenario files: a JSON document with exactly five top-level sections
// (agents, environment, object, control, output). Unknown keys are
// rejected so typos cannot silently fall back to defaults. Semantic
// invariants (grid stability bound, footprint fit, start positions clear
// of obstacles) are reported check-by-check for the validate command and
// enforced before any run.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "swarmsim/dynamics.hpp"
#include "swarmsim/error.hpp"
#include "swarmsim/geometry.hpp"
#include "swarmsim/phase1.hpp"

namespace swarmsim {

struct Scenario {
    int n_agents = 0;
    std::vector<Vec2> initial_positions;
    double agent_radius = 0.0;

    std::vector<Polygon> obstacles;
    Vec2 target;

    ObjectFootprint footprint;

    DynamicsParams params;
    double r_c = 0.0;
    int grid_n = 0;
    int sensors_m = 8;
    double max_range = 10.0;
    double epsilon = 0.05;
    double step = 0.25;
    int cadence = 10;
    double clearance_margin = 0.0;
    std::uint64_t seed = 1;

    std::string output_basename = "trace";
};

struct ScenarioCheck {
    std::string name;
    bool passed = false;
    std::string detail;
};

namespace detail {

using nlohmann::json;

inline void require_keys(const json& obj, const std::string& where,
                         const std::vector<std::string>& required,
                         const std::vector<std::string>& optional) {
    if (!obj.is_object())
        throw SimError(Err::ParseError, where + " must be an object");
    for (const auto& item : obj.items()) {
        const std::string& key = item.key();
        bool known = false;
        for (const auto& k : required) known = known || k == key;
        for (const auto& k : optional) known = known || k == key;
        if (!known) throw SimError(Err::ParseError, "unknown key \"" + key + "\" in " + where);
    }
    for (const auto& k : required)
        if (!obj.contains(k))
            throw SimError(Err::ParseError, "missing required key \"" + k + "\" in " + where);
}

inline Vec2 parse_vec2(const json& v, const std::string& where) {
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
        throw SimError(Err::ParseError, where + " must be a [x, y] number pair");
    return {v[0].get<double>(), v[1].get<double>()};
}

inline Polygon parse_polygon(const json& v, const std::string& where) {
    if (!v.is_array())
        throw SimError(Err::ParseError, where + " must be an array of [x, y] pairs");
    Polygon poly;
    for (std::size_t i = 0; i < v.size(); ++i)
        poly.vertices.push_back(parse_vec2(v[i], where + "[" + std::to_string(i) + "]"));
    return poly;
}

template <typename T>
T number_or(const json& obj, const std::string& key, T fallback) {
    if (!obj.contains(key)) return fallback;
    if (!obj[key].is_number())
        throw SimError(Err::ParseError, "key \"" + key + "\" must be a number");
    return obj[key].get<T>();
}

}  // namespace detail

/// Parse scenario JSON text. Structural problems (bad types, unknown or
/// missing keys, malformed JSON) throw ParseError; the message for
/// malformed JSON carries nlohmann's line/column diagnostic.
inline Scenario parse_scenario(const std::string& text) {
    using detail::json;
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw SimError(Err::ParseError, e.what());
    }
    detail::require_keys(doc, "scenario", {"agents", "environment", "object", "control"},
                         {"output"});

    Scenario sc;

    const json& agents = doc["agents"];
    detail::require_keys(agents, "agents", {"count", "initial_positions"}, {"radius"});
    if (!agents["count"].is_number_integer())
        throw SimError(Err::ParseError, "agents.count must be an integer");
    sc.n_agents = agents["count"].get<int>();
    for (std::size_t i = 0; i < agents["initial_positions"].size(); ++i)
        sc.initial_positions.push_back(
            detail::parse_vec2(agents["initial_positions"][i],
                               "agents.initial_positions[" + std::to_string(i) + "]"));
    sc.agent_radius = detail::number_or(agents, "radius", 0.0);

    const json& env = doc["environment"];
    detail::require_keys(env, "environment", {"target"}, {"obstacles"});
    sc.target = detail::parse_vec2(env["target"], "environment.target");
    if (env.contains("obstacles"))
        for (std::size_t i = 0; i < env["obstacles"].size(); ++i)
            sc.obstacles.push_back(detail::parse_polygon(
                env["obstacles"][i], "environment.obstacles[" + std::to_string(i) + "]"));

    const json& object = doc["object"];
    detail::require_keys(object, "object", {"footprint"}, {});
    const json& fp = object["footprint"];
    if (fp.is_object()) {
        detail::require_keys(fp, "object.footprint", {"kind", "radius"}, {"segments", "center"});
        if (fp["kind"] != "disc")
            throw SimError(Err::ParseError, "object.footprint.kind must be \"disc\"");
        const double radius = detail::number_or(fp, "radius", 0.0);
        const int segments = detail::number_or(fp, "segments", 64);
        Vec2 center{0, 0};
        if (fp.contains("center"))
            center = detail::parse_vec2(fp["center"], "object.footprint.center");
        sc.footprint = ObjectFootprint::from_polygon(regular_polygon(center, radius, segments));
    } else {
        sc.footprint = ObjectFootprint::from_polygon(detail::parse_polygon(fp, "object.footprint"));
    }

    const json& control = doc["control"];
    detail::require_keys(control, "control", {"r_c", "n"},
                         {"k_c", "k_r", "r_s", "dt", "repulsion_exponent", "m", "max_range",
                          "epsilon", "step", "cadence", "clearance_margin", "seed"});
    sc.r_c = detail::number_or(control, "r_c", 0.0);
    sc.grid_n = detail::number_or(control, "n", 0);
    sc.params.k_c = detail::number_or(control, "k_c", 5.0);
    sc.params.k_r = detail::number_or(control, "k_r", 2.5);
    sc.params.r_s = detail::number_or(control, "r_s", 0.0575);
    sc.params.dt = detail::number_or(control, "dt", 0.01);
    if (control.contains("repulsion_exponent")) {
        const std::string mode = control["repulsion_exponent"].get<std::string>();
        if (mode == "linear")
            sc.params.exponent = RepulsionExponent::linear;
        else if (mode == "squared")
            sc.params.exponent = RepulsionExponent::squared;
        else
            throw SimError(Err::ParseError,
                           "control.repulsion_exponent must be \"linear\" or \"squared\"");
    }
    sc.sensors_m = detail::number_or(control, "m", 8);
    sc.max_range = detail::number_or(control, "max_range", 10.0);
    sc.epsilon = detail::number_or(control, "epsilon", 0.05);
    sc.step = detail::number_or(control, "step", 0.25);
    sc.cadence = detail::number_or(control, "cadence", 10);
    sc.clearance_margin = detail::number_or(control, "clearance_margin", 0.0);
    sc.seed = detail::number_or<std::uint64_t>(control, "seed", 1);

    if (doc.contains("output")) {
        detail::require_keys(doc["output"], "output", {}, {"basename"});
        if (doc["output"].contains("basename"))
            sc.output_basename = doc["output"]["basename"].get<std::string>();
    }
    return sc;
}

/// Run every semantic invariant and report them individually.
inline std::vector<ScenarioCheck> scenario_checks(const Scenario& sc) {
    std::vector<ScenarioCheck> checks;
    auto add = [&](const std::string& name, bool ok, const std::string& detail) {
        checks.push_back({name, ok, detail});
    };

    add("agent count", sc.n_agents >= 1, "count = " + std::to_string(sc.n_agents));
    {
        bool ok = sc.initial_positions.size() == static_cast<std::size_t>(sc.n_agents);
        for (Vec2 p : sc.initial_positions) ok = ok && p.finite();
        add("initial positions", ok,
            std::to_string(sc.initial_positions.size()) + " positions for " +
                std::to_string(sc.n_agents) + " agents");
    }
    add("dynamics gains",
        sc.params.k_c > 0 && sc.params.k_r >= 0 && sc.params.r_s > 0 && sc.params.dt > 0,
        "k_c > 0, k_r >= 0, r_s > 0, dt > 0");
    add("region radius", sc.r_c > 0 && std::isfinite(sc.r_c), "r_c = " + std::to_string(sc.r_c));
    add("sensor rig", sc.sensors_m >= 1 && sc.max_range > 0, "m >= 1, max_range > 0");
    add("tracking parameters",
        sc.epsilon > 0 && sc.step > 0 && sc.cadence >= 1 && sc.clearance_margin >= 0 &&
            sc.agent_radius >= 0,
        "epsilon, step > 0; cadence >= 1");

    {
        bool ok = false;
        std::string detail;
        if (sc.r_c > 0 && sc.params.r_s > 0) {
            try {
                const int bound = max_grid_resolution(sc.r_c, sc.params.r_s);
                ok = sc.grid_n >= 1 && sc.grid_n <= bound;
                detail = "n <= floor(r_c / (3*r_s)) = " + std::to_string(bound) + " (got " +
                         std::to_string(sc.grid_n) + ")";
            } catch (const SimError& e) {
                detail = e.what();
            }
        } else {
            detail = "radii invalid";
        }
        add("grid stability bound", ok, detail);
    }

    {
        bool ok = true;
        std::string detail = "valid";
        try {
            validate_polygon(sc.footprint.shape);
        } catch (const SimError& e) {
            ok = false;
            detail = e.what();
        }
        add("footprint polygon", ok, detail);

        const double diameter = sc.footprint.shape.max_diameter();
        add("footprint fits region", ok && diameter <= 2 * sc.r_c,
            "max diameter " + std::to_string(diameter) + " vs 2*r_c = " +
                std::to_string(2 * sc.r_c));
    }

    {
        bool ok = true;
        std::string detail = "all valid";
        for (std::size_t i = 0; i < sc.obstacles.size() && ok; ++i) {
            try {
                validate_polygon(sc.obstacles[i]);
            } catch (const SimError& e) {
                ok = false;
                detail = "obstacle " + std::to_string(i) + ": " + e.what();
            }
        }
        add("obstacle polygons", ok, detail);

        bool clear = ok;
        std::string where = "all clear";
        if (ok) {
            for (std::size_t i = 0; i < sc.initial_positions.size() && clear; ++i)
                for (std::size_t j = 0; j < sc.obstacles.size() && clear; ++j)
                    if (point_in_polygon(sc.initial_positions[i], sc.obstacles[j])) {
                        clear = false;
                        where = "agent " + std::to_string(i + 1) + " starts inside obstacle " +
                                std::to_string(j);
                    }
        } else {
            where = "skipped: invalid obstacle";
        }
        add("starts outside obstacles", clear, where);
    }
    return checks;
}

/// Parse and validate; the first failing check aborts the load.
inline Scenario scenario_from_text(const std::string& text) {
    Scenario sc = parse_scenario(text);
    for (const ScenarioCheck& c : scenario_checks(sc))
        if (!c.passed)
            throw SimError(Err::ValidationError, c.name + " failed: " + c.detail);
    return sc;
}

inline Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SimError(Err::ParseError, "cannot open scenario file " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return scenario_from_text(buffer.str());
}

}  // namespace swarmsim
