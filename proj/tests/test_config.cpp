#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "hofer/config.hpp"
#include "hofer/reports.hpp"

using namespace hofer;

TEST_CASE("key-value tree parsing") {
    auto tree = KeyValueTree::parse_text(R"(
# comment
top = 1
[surface]
genus = 0
punctures = 2
positions = 0.3 0.5, 0.7 0.5
[field]
expression = h*h   # trailing comment
grid = 128
[bounds]
classes = 4; 1, 0; 2, -3
)");
    CHECK(tree.get_number("top", 0) == 1);
    CHECK(tree.get_int("surface.punctures", 0) == 2);
    CHECK(tree.get_string("field.expression") == "h*h");
    auto pos = tree.get_numbers("surface.positions");
    REQUIRE(pos.size() == 4);
    CHECK(pos[2] == 0.7);
    auto groups = tree.get_int_groups("bounds.classes");
    REQUIRE(groups.size() == 3);
    CHECK(groups[0] == std::vector<long long>{4});
    CHECK(groups[2] == std::vector<long long>{2, -3});
    CHECK_THROWS_AS(KeyValueTree::parse_text("novalue"), ConfigError);
    CHECK_THROWS_AS(KeyValueTree::parse_text("[open\nx = 1"), ConfigError);
    CHECK_THROWS_AS(tree.get_number("field.expression", 0), ConfigError);
}

TEST_CASE("run config resolution and overrides") {
    auto base = KeyValueTree::parse_text("[params]\nA = 0.6\n[field]\ngrid = 64\n");
    KeyValueTree overrides;
    overrides.set("params.A", "0.75");
    RunConfig cfg;
    cfg.tree = base;
    for (const auto& [k, v] : overrides.entries()) cfg.tree.set(k, v);
    CHECK(cfg.tree.get_number("params.A", 0) == 0.75);

    RunConfig bad;
    bad.A = 1.5;
    CHECK_THROWS_AS(bad.validate(), ConfigError);
}

TEST_CASE("report emitters are stable") {
    BoundReport rep;
    rep.lower = {0.75, "energy-capacity inequality"};
    rep.upper = {1.5, "annulus refinement"};
    auto j = bound_report_json(rep, make_genus0_class({4}), 0.75);
    CHECK(j["schema"] == "hofer-spectrum/1");
    CHECK(j["lower"]["value"] == 0.75);

    Trajectory traj;
    traj.times = {0.0, 0.5};
    traj.points = {{0.0, 0.5}, {0.25, 0.5}};
    auto csv = trajectory_csv(traj);
    CHECK(csv == "t,theta,h\n0,0,0.5\n0.5,0.25,0.5\n");

    auto sweep = sweep_csv({{0.2, 0.15}, {0.3, 0.3}});
    CHECK(sweep == "s2,rho_raw\n0.2,0.15\n0.3,0.3\n");
}
