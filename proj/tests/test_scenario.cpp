#include <catch2/catch_amalgamated.hpp>

#include <fstream>
#include <string>

#include <json.hpp>

#include "swarmsim/scenario.hpp"

using namespace swarmsim;
using nlohmann::json;

namespace {

const std::string kScenarioDir = SWARMSIM_SCENARIO_DIR;

json load_json(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    json doc;
    in >> doc;
    return doc;
}

}  // namespace

TEST_CASE("the shipped scenarios parse and validate") {
    for (const char* name : {"smoke.scenario", "table1_open.scenario", "corridor.scenario"}) {
        const Scenario sc = load_scenario(kScenarioDir + "/" + std::string(name));
        for (const ScenarioCheck& c : scenario_checks(sc)) {
            INFO(name << ": " << c.name << " — " << c.detail);
            REQUIRE(c.passed);
        }
    }
}

TEST_CASE("reference parameter set loads with expected values") {
    const Scenario sc = load_scenario(kScenarioDir + "/table1_open.scenario");
    REQUIRE(sc.n_agents == 10);
    REQUIRE(sc.params.k_c == 5.0);
    REQUIRE(sc.params.k_r == 2.5);
    REQUIRE(sc.params.r_s == 0.0575);
    REQUIRE(sc.r_c == 8.5);
    REQUIRE(sc.grid_n == 49);
    REQUIRE(sc.sensors_m == 8);
    REQUIRE(sc.target.x == 100.0);
    REQUIRE(sc.target.y == 100.0);
    REQUIRE(sc.obstacles.empty());
    REQUIRE(sc.footprint.shape.vertices.size() == 128);
    REQUIRE(sc.params.exponent == RepulsionExponent::linear);
}

TEST_CASE("grid resolutions beyond the stability bound are rejected at load") {
    json doc = load_json(kScenarioDir + "/table1_open.scenario");
    doc["control"]["n"] = 50;
    try {
        scenario_from_text(doc.dump());
        FAIL("expected rejection");
    } catch (const SimError& e) {
        REQUIRE(e.code() == Err::ValidationError);
        REQUIRE(std::string(e.what()).find("49") != std::string::npos);
    }
}

TEST_CASE("unknown keys are rejected") {
    json doc = load_json(kScenarioDir + "/smoke.scenario");
    doc["control"]["k_x"] = 1.0;
    try {
        parse_scenario(doc.dump());
        FAIL("expected rejection");
    } catch (const SimError& e) {
        REQUIRE(e.code() == Err::ParseError);
        REQUIRE(std::string(e.what()).find("k_x") != std::string::npos);
    }

    json top = load_json(kScenarioDir + "/smoke.scenario");
    top["extra_section"] = json::object();
    REQUIRE_THROWS_AS(parse_scenario(top.dump()), SimError);
}

TEST_CASE("missing sections and malformed text give parse diagnostics") {
    json doc = load_json(kScenarioDir + "/smoke.scenario");
    doc.erase("environment");
    try {
        parse_scenario(doc.dump());
        FAIL("expected rejection");
    } catch (const SimError& e) {
        REQUIRE(std::string(e.what()).find("environment") != std::string::npos);
    }

    try {
        parse_scenario("{\"agents\": {\n  \"count\": ,\n}}");
        FAIL("expected rejection");
    } catch (const SimError& e) {
        REQUIRE(e.code() == Err::ParseError);
        REQUIRE(std::string(e.what()).find("line") != std::string::npos);
    }
}

TEST_CASE("semantic checks catch bad geometry") {
    SECTION("footprint larger than the region") {
        json doc = load_json(kScenarioDir + "/smoke.scenario");
        doc["object"]["footprint"] = {{"kind", "disc"}, {"radius", 2.5}, {"segments", 16}};
        REQUIRE_THROWS_AS(scenario_from_text(doc.dump()), SimError);
    }
    SECTION("start inside an obstacle") {
        json doc = load_json(kScenarioDir + "/smoke.scenario");
        doc["environment"]["obstacles"] = json::array(
            {json::array({json::array({-1.0, -1.0}), json::array({1.0, -1.0}),
                          json::array({1.0, 1.0}), json::array({-1.0, 1.0})})});
        try {
            scenario_from_text(doc.dump());
            FAIL("expected rejection");
        } catch (const SimError& e) {
            REQUIRE(std::string(e.what()).find("starts outside obstacles") != std::string::npos);
        }
    }
    SECTION("clockwise obstacle polygon") {
        json doc = load_json(kScenarioDir + "/smoke.scenario");
        doc["environment"]["obstacles"] = json::array(
            {json::array({json::array({10.0, 10.0}), json::array({10.0, 12.0}),
                          json::array({12.0, 12.0}), json::array({12.0, 10.0})})});
        REQUIRE_THROWS_AS(scenario_from_text(doc.dump()), SimError);
    }
}

TEST_CASE("defaults fill the optional control keys") {
    const std::string minimal = R"({
      "agents": {"count": 1, "initial_positions": [[0.0, 0.0]]},
      "environment": {"target": [5.0, 0.0]},
      "object": {"footprint": {"kind": "disc", "radius": 0.9, "segments": 16}},
      "control": {"r_c": 1.0, "n": 2}
    })";
    const Scenario sc = scenario_from_text(minimal);
    REQUIRE(sc.params.k_c == 5.0);
    REQUIRE(sc.params.k_r == 2.5);
    REQUIRE(sc.params.dt == 0.01);
    REQUIRE(sc.sensors_m == 8);
    REQUIRE(sc.max_range == 10.0);
    REQUIRE(sc.epsilon == 0.05);
    REQUIRE(sc.step == 0.25);
    REQUIRE(sc.cadence == 10);
    REQUIRE(sc.seed == 1);
    REQUIRE(sc.output_basename == "trace");
}

TEST_CASE("repulsion exponent modes parse") {
    json doc = load_json(kScenarioDir + "/smoke.scenario");
    doc["control"]["repulsion_exponent"] = "squared";
    REQUIRE(scenario_from_text(doc.dump()).params.exponent == RepulsionExponent::squared);
    doc["control"]["repulsion_exponent"] = "cubic";
    REQUIRE_THROWS_AS(parse_scenario(doc.dump()), SimError);
}
