#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "support/oracles.hpp"
#include "swarmsim/sensing.hpp"

using namespace swarmsim;
using Catch::Approx;

namespace {

// Thin wall occupying x in [2, 2.1], y in [-5, 5]; its near face is the
// segment x = 2.
const Polygon kWall{{{2, -5}, {2.1, -5}, {2.1, 5}, {2, 5}}};

}  // namespace

TEST_CASE("scan measures a frontal wall") {
    const SensorRig rig{8, 10.0};
    const SensorScan s = scan({0, 0}, 0.0, rig, {kWall});
    REQUIRE(s.readings[0].has_value());
    REQUIRE(*s.readings[0] == Approx(2.0).margin(1e-12));
    REQUIRE_FALSE(s.readings[2].has_value());  // straight up, no wall there
    REQUIRE_FALSE(s.readings[4].has_value());  // behind
}

TEST_CASE("scan accounts for the heading") {
    const SensorRig rig{4, 10.0};
    const SensorScan s = scan({0, 0}, std::numbers::pi / 4, rig, {kWall});
    REQUIRE(s.readings[0].has_value());
    REQUIRE(*s.readings[0] == Approx(2.0 * std::numbers::sqrt2).epsilon(1e-12));
    const double oracle =
        oracles::vertical_wall_hit({0, 0}, std::numbers::pi / 4, 2.0, -5.0, 5.0);
    REQUIRE(*s.readings[0] == Approx(oracle).epsilon(1e-12));
}

TEST_CASE("readings beyond max range are absent") {
    const SensorRig rig{8, 1.5};
    const SensorScan s = scan({0, 0}, 0.0, rig, {kWall});
    for (const auto& r : s.readings) REQUIRE_FALSE(r.has_value());
}

TEST_CASE("scan origin inside an obstacle is rejected") {
    const SensorRig rig{8, 10.0};
    REQUIRE_THROWS_AS(scan({2.05, 0}, 0.0, rig, {kWall}), SimError);
    try {
        scan({2.05, 0}, 0.0, rig, {kWall});
        FAIL("expected throw");
    } catch (const SimError& e) {
        REQUIRE(e.code() == Err::AgentInObstacle);
    }
}

TEST_CASE("obstacle point prediction") {
    const SensorRig rig{8, 10.0};
    SensorScan s;
    s.readings.resize(8);

    SECTION("frontal hit") {
        s.readings[0] = 2.0;
        const ObstaclePointCloud cloud = predict_obstacle_points(s, {0, 0}, 0.0, rig);
        REQUIRE(cloud.points.size() == 1);
        REQUIRE(cloud.points[0].x == Approx(2.0).margin(1e-12));
        REQUIRE(cloud.points[0].y == Approx(0.0).margin(1e-12));
    }
    SECTION("third sensor points straight up") {
        s.readings[2] = 2.0;
        const ObstaclePointCloud cloud = predict_obstacle_points(s, {1, 1}, 0.0, rig);
        REQUIRE(cloud.points.size() == 1);
        REQUIRE(cloud.points[0].x == Approx(1.0).margin(1e-9));
        REQUIRE(cloud.points[0].y == Approx(3.0).margin(1e-9));
    }
    SECTION("heading term flips the first sensor") {
        s.readings[0] = 1.0;
        const ObstaclePointCloud cloud =
            predict_obstacle_points(s, {0, 0}, std::numbers::pi, rig);
        REQUIRE(cloud.points.size() == 1);
        REQUIRE(cloud.points[0].x == Approx(-1.0).margin(1e-9));
        REQUIRE(cloud.points[0].y == Approx(0.0).margin(1e-9));
    }
}

TEST_CASE("swarm cloud aggregation keeps agent-then-sensor order") {
    ObstaclePointCloud c1{{{1, 0}, {2, 0}, {3, 0}}, 1};
    ObstaclePointCloud c2{{{4, 0}, {5, 0}}, 2};
    const std::vector<Vec2> all = aggregate_swarm_cloud({c1, c2});
    REQUIRE(all.size() == 5);
    for (int i = 0; i < 5; ++i) REQUIRE(all[i].x == Approx(i + 1.0));

    REQUIRE(aggregate_swarm_cloud({ObstaclePointCloud{{}, 1}, ObstaclePointCloud{{}, 2}}).empty());
}

TEST_CASE("full-coverage aggregate has one point per sensor per agent") {
    // Four wall strips enclosing the swarm so every ray hits something.
    const std::vector<Polygon> room{
        Polygon{{{-20, -21}, {20, -21}, {20, -20}, {-20, -20}}},
        Polygon{{{-20, 20}, {20, 20}, {20, 21}, {-20, 21}}},
        Polygon{{{-21, -20}, {-20, -20}, {-20, 20}, {-21, 20}}},
        Polygon{{{20, -20}, {21, -20}, {21, 20}, {20, 20}}},
    };
    const SensorRig rig{8, 50.0};
    std::vector<ObstaclePointCloud> clouds;
    auto gen = oracles::rng(11);
    for (int agent = 1; agent <= 10; ++agent) {
        const Vec2 p{oracles::uniform(gen, -5, 5), oracles::uniform(gen, -5, 5)};
        const SensorScan s = scan(p, 0.0, rig, room);
        clouds.push_back(predict_obstacle_points(s, p, 0.0, rig, agent));
    }
    REQUIRE(aggregate_swarm_cloud(clouds).size() == 80);
}

TEST_CASE("predicted points land on the obstacle boundary") {
    auto gen = oracles::rng(22);
    const SensorRig rig{16, 25.0};
    for (int trial = 0; trial < 50; ++trial) {
        const Vec2 c{oracles::uniform(gen, -3, 3), oracles::uniform(gen, -3, 3)};
        const Polygon poly = regular_polygon(c + Vec2{8, 0}, oracles::uniform(gen, 1, 3),
                                             oracles::uniform_int(gen, 3, 9));
        const double beta = oracles::uniform(gen, -std::numbers::pi, std::numbers::pi);
        const SensorScan s = scan(c, beta, rig, {poly});
        const ObstaclePointCloud cloud = predict_obstacle_points(s, c, beta, rig);
        for (Vec2 p : cloud.points)
            REQUIRE(oracles::distance_to_polygon_boundary(p, poly) < 1e-6);
    }
}

TEST_CASE("rotating environment and heading together rotates the cloud") {
    auto gen = oracles::rng(33);
    const SensorRig rig{12, 20.0};
    for (int trial = 0; trial < 100; ++trial) {
        const Vec2 agent{oracles::uniform(gen, -2, 2), oracles::uniform(gen, -2, 2)};
        const double beta = oracles::uniform(gen, -1.0, 1.0);
        const double theta = oracles::uniform(gen, -std::numbers::pi, std::numbers::pi);

        // Obstacle fully inside sensing range so presence cannot flip.
        Polygon poly = regular_polygon(agent + Vec2{6, 1}, 2.0, oracles::uniform_int(gen, 3, 8));

        Polygon rotated_poly;
        for (Vec2 v : poly.vertices)
            rotated_poly.vertices.push_back(agent + rotated(v - agent, theta));

        const SensorScan base = scan(agent, beta, rig, {poly});
        const SensorScan turned = scan(agent, beta + theta, rig, {rotated_poly});
        const auto cloud = predict_obstacle_points(base, agent, beta, rig);
        const auto cloud_turned = predict_obstacle_points(turned, agent, beta + theta, rig);

        REQUIRE(cloud.points.size() == cloud_turned.points.size());
        for (std::size_t i = 0; i < cloud.points.size(); ++i) {
            const Vec2 expect = agent + rotated(cloud.points[i] - agent, theta);
            REQUIRE(distance(expect, cloud_turned.points[i]) < 1e-9);
        }
    }
}

TEST_CASE("identical inputs give bit-identical scans") {
    const SensorRig rig{8, 10.0};
    const SensorScan a = scan({0.1, -0.4}, 0.3, rig, {kWall});
    const SensorScan b = scan({0.1, -0.4}, 0.3, rig, {kWall});
    REQUIRE(a.readings.size() == b.readings.size());
    for (std::size_t i = 0; i < a.readings.size(); ++i) {
        REQUIRE(a.readings[i].has_value() == b.readings[i].has_value());
        if (a.readings[i]) REQUIRE(*a.readings[i] == *b.readings[i]);
    }
}
