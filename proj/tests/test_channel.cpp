#include <catch2/catch_amalgamated.hpp>

#include <fstream>
#include <sstream>

#include "coopnet/channel.hpp"

using namespace coopnet;

namespace {

std::string read_file(const std::string& name) {
    std::ifstream in(std::string(COOPNET_FIXTURE_DIR) + "/" + name);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("minimal one-link interference channel loads") {
    const Scenario sc = load_scenario(R"({"model":"ic","K":1,"gains":[[1.0]],"powers":[1.0]})");
    const auto& ic = std::get<InterferenceChannel>(sc);
    CHECK(ic.K == 1);
    CHECK(ic.gains[0][0] == 1.0);
    CHECK(ic.noise_var == 1.0);  // default
}

TEST_CASE("bundled scenarios load and validate") {
    SECTION("three-link interference channel") {
        const Scenario sc = load_scenario(read_file("example1_ic.json"));
        const auto& ic = std::get<InterferenceChannel>(sc);
        CHECK(ic.K == 3);
        CHECK(ic.gains[0][1] == Catch::Approx(0.3772));
        CHECK(ic.gains[2][2] == Catch::Approx(0.8502));
        CHECK(ic.powers == std::vector<double>{1.0, 1.0, 1.0});
    }
    SECTION("clustered uplink") {
        const Scenario sc = load_scenario(read_file("example2_clustered.json"));
        const auto& cm = std::get<ClusteredMac>(sc);
        CHECK(cm.K == 3);
        CHECK(cm.hd == std::vector<double>{0.05, 0.05, 0.025});
        CHECK(cm.hu[0][1] == 1.0);
        CHECK(cm.powers == std::vector<double>{5.0, 5.0, 2.0});
    }
    SECTION("equal-gain CDMA uplink") {
        const Scenario sc = load_scenario(read_file("symmetric_mac.json"));
        const auto& c = std::get<CdmaMac>(sc);
        CHECK(c.K == 3);
        CHECK(c.h == std::vector<double>{10.0, 10.0, 10.0});
        CHECK(c.sigma2 == 1.0);
    }
}

TEST_CASE("scenario JSON round trips") {
    for (const char* name : {"example1_ic.json", "example2_clustered.json", "symmetric_mac.json"}) {
        const Scenario sc = load_scenario(read_file(name));
        const Scenario back = scenario_from_json(scenario_to_json(sc));
        CHECK(scenario_to_json(back) == scenario_to_json(sc));
    }
}

TEST_CASE("malformed documents are rejected") {
    CHECK_THROWS_AS(load_scenario("not json at all"), ParseError);
    CHECK_THROWS_AS(load_scenario(R"({"model":"ic","K":1,"gains":[[NaN]],"powers":[1]})"),
                    ParseError);  // NaN is not JSON
    CHECK_THROWS_AS(load_scenario(R"({"K":1})"), SchemaError);
    CHECK_THROWS_AS(load_scenario(R"({"model":"mimo","K":1})"), SchemaError);
    CHECK_THROWS_AS(load_scenario(R"({"model":"ic","K":0,"gains":[],"powers":[]})"),
                    InvariantViolation);
    CHECK_THROWS_AS(load_scenario(R"({"model":"ic","K":2,"gains":[[1,0],[0,1]],"powers":[1]})"),
                    SchemaError);
    CHECK_THROWS_AS(load_scenario(R"({"model":"ic","K":1,"gains":[[-0.5]],"powers":[1]})"),
                    InvariantViolation);
    CHECK_THROWS_AS(
        load_scenario(R"({"model":"ic","K":1,"gains":[[1]],"powers":[1],"noise_var":0})"),
        InvariantViolation);
    CHECK_THROWS_AS(load_scenario(R"({"model":"ic","K":1,"gains":[[1]],"powers":[0]})"),
                    InvariantViolation);
}

TEST_CASE("CDMA correlation bounds") {
    const auto doc = [](double rho) {
        return R"({"model":"cdma","K":3,"h":[1,1,1],"P":1,"rho":)" + std::to_string(rho) +
               R"(,"sigma2":1})";
    };
    CHECK_NOTHROW(load_scenario(doc(0.9)));
    CHECK_NOTHROW(load_scenario(doc(-0.4)));
    CHECK_THROWS_AS(load_scenario(doc(1.0)), InvariantViolation);
    CHECK_THROWS_AS(load_scenario(doc(-0.5)), InvariantViolation);  // = -1/(K-1)
    CHECK_THROWS_AS(load_scenario(doc(1.5)), InvariantViolation);
}

TEST_CASE("clustered gain condition is enforced") {
    // hu[2][0] below hd[0] breaks "every relay hears k better than the destination"
    const char* bad = R"({
        "model":"clustered","K":3,
        "hd":[0.05,0.05,0.025],
        "hu":[[0,1,0.1],[1,0,0.1],[0.04,0.1,0]],
        "powers":[5,5,2]})";
    CHECK_THROWS_AS(load_scenario(bad), InvariantViolation);

    try {
        load_scenario(bad);
        FAIL("expected InvariantViolation");
    } catch (const InvariantViolation& e) {
        CHECK(std::string(e.what()).find("hu[2][0]") != std::string::npos);
    }
}
