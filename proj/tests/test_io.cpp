#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <fstream>

#include "delocx/io.hpp"

using namespace delocx;
using io::json;

TEST_CASE("group files parse") {
    auto doc = json::parse(R"({"points": 3, "generators": [[1,0,2],[1,2,0]]})");
    auto pg = io::parse_group(doc);
    CHECK(pg.group.order() == 6);

    CHECK_THROWS_AS(io::parse_group(json::parse(R"({"points": 2})")), InputError);
    CHECK_THROWS_AS(io::parse_group(json::parse(R"({"points": 2, "generators": [[0,0]]})")),
                    NotBijective);
}

TEST_CASE("space files parse with action and orientation") {
    auto doc = json::parse(R"({
        "vertices": 4,
        "simplices": [[0,1],[1,2],[2,3],[0,3]],
        "action": {"gen0": [0,3,2,1]},
        "orientation": {"signs": [1,-1,1,1]}
    })");
    auto space = io::parse_space(doc);
    CHECK(space.action.group().order() == 2);
    CHECK(space.action.complex().count(1) == 4);
    CHECK(space.has_orientation);
    CHECK(check_orientation(space.action.complex(), space.orientation));

    SECTION("no action means the trivial group") {
        auto plain = io::parse_space(json::parse(
            R"({"vertices": 2, "simplices": [[0,1]]})"));
        CHECK(plain.action.group().order() == 1);
    }
    SECTION("bad action keys are rejected") {
        CHECK_THROWS_AS(io::parse_space(json::parse(
                            R"({"vertices": 1, "simplices": [], "action": {"foo": [0]}})")),
                        InputError);
    }
    SECTION("vertex order participates in the complex") {
        auto reordered = io::parse_space(json::parse(R"({
            "vertices": 3,
            "simplices": [[0,1],[1,2],[0,2]],
            "orientation": {"signs": [1,1,1], "vertex_order": [2,0,1]}
        })"));
        CHECK(reordered.action.complex().vertex_rank(2) == 0);
    }
}

TEST_CASE("scalar grammar") {
    CHECK(io::parse_scalar(json(5), 4) == Cyclotomic(5));
    CHECK(io::parse_scalar(json("3/2"), 4) == Cyclotomic(Rat(3, 2)));
    CHECK(io::parse_scalar(json::parse("[0, 1]"), 4) == Cyclotomic::zeta(4));
    CHECK(io::parse_scalar(json::parse(R"([0, "1/2"])"), 4) ==
          Cyclotomic::zeta(4) * Rat(1, 2));
    CHECK_THROWS_AS(io::parse_scalar(json::parse("{}"), 4), InputError);
    CHECK_THROWS_AS(io::parse_scalar(json("x"), 4), InputError);
}

TEST_CASE("bundle files parse in generator and full forms") {
    auto space = io::parse_space(json::parse(R"({
        "vertices": 4,
        "simplices": [[0,1],[1,2],[2,3],[0,3]],
        "action": {"gen0": [0,3,2,1]}
    })"));
    SECTION("generator-only rho extends along the cocycle") {
        json doc;
        doc["fiber_dim"] = 1;
        json per_vertex;
        for (int v = 0; v < 4; ++v)
            per_vertex[std::to_string(v)] = json::array({json::array({-1})});
        doc["rho"] = {{"1", per_vertex}};
        auto bundle = io::parse_bundle(doc, space.action);
        CHECK(validate_bundle(bundle).valid);
        CHECK(bundle.rho(1, 2)[0][0] == Cyclotomic(Rat(-1)));
        CHECK(bundle.rho(0, 0)[0][0] == Cyclotomic(1));
    }
    SECTION("missing vertices are rejected") {
        json doc;
        doc["fiber_dim"] = 1;
        doc["rho"] = {{"1", {{"0", json::array({json::array({-1})})}}}};
        CHECK_THROWS_AS(io::parse_bundle(doc, space.action), InputError);
    }
    SECTION("foreign element ids are rejected") {
        json doc;
        doc["fiber_dim"] = 1;
        json per_vertex;
        for (int v = 0; v < 4; ++v)
            per_vertex[std::to_string(v)] = json::array({json::array({1})});
        doc["rho"] = {{"7", per_vertex}};
        CHECK_THROWS_AS(io::parse_bundle(doc, space.action), InputError);
    }
}

TEST_CASE("enumeration cap env override") {
    unsetenv("DELOC_CAP");
    CHECK(io::enumeration_cap(42) == 42);
    setenv("DELOC_CAP", "7", 1);
    CHECK(io::enumeration_cap(42) == 7);
    setenv("DELOC_CAP", "bogus", 1);
    CHECK(io::enumeration_cap(42) == 42);
    unsetenv("DELOC_CAP");
}

TEST_CASE("report bookkeeping") {
    io::Report report("demo");
    report.check(true, "never");
    report.check(false, "witnessed");
    CHECK(report.exit_code == 1);
    CHECK(report.doc["checks"]["passed"] == 1);
    CHECK(report.doc["checks"]["failed"] == 1);
    CHECK(report.doc["checks"]["witnesses"][0] == "witnessed");
}

#if defined(DELOCX_CLI_PATH) && defined(DELOCX_SAMPLES_DIR)

namespace {
int run_cli(const std::string& args) {
    std::string cmd = std::string(DELOCX_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}
} // namespace

TEST_CASE("cli exit codes") {
    const std::string samples = DELOCX_SAMPLES_DIR;
    CHECK(run_cli("hp-group --group " + samples + "/s3.json") == 0);
    CHECK(run_cli("hp-group --group " + samples + "/does_not_exist.json") == 2);

    // malformed input
    {
        std::ofstream bad("/tmp/delocx_bad_input.json");
        bad << "{ not json";
    }
    CHECK(run_cli("cohomology --space /tmp/delocx_bad_input.json") == 2);

    // irregular action is a precondition error
    {
        std::ofstream irregular("/tmp/delocx_irregular.json");
        irregular << R"({"vertices": 2, "simplices": [[0,1]], "action": {"gen0": [1,0]}})";
    }
    CHECK(run_cli("cohomology --space /tmp/delocx_irregular.json") == 2);

    // a failing check: two spheres pinched at a vertex form a closed oriented
    // pseudomanifold whose pairing cannot be perfect (H^0 is 1, H^2 is 2)
    {
        std::ofstream pinched("/tmp/delocx_pinched.json");
        // signs follow the lexicographic storage order of the faces:
        // 012, 013, 023, 045, 046, 056, 123, 456
        pinched << R"({
            "vertices": 7,
            "simplices": [[0,1,2],[0,1,3],[0,2,3],[1,2,3],
                          [0,4,5],[0,4,6],[0,5,6],[4,5,6]],
            "orientation": {"signs": [-1,1,-1,-1,1,-1,1,1]}
        })";
    }
    CHECK(run_cli("pairing --space /tmp/delocx_pinched.json") == 1);
}

#endif
