// End-to-end checks of the command-line front end: pinned outputs, exit
// codes (0 success / 10 negative verdict / 1 error), and CSV artifacts.

#include <catch2/catch_amalgamated.hpp>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "coopnet/pdf.hpp"

#ifndef COOPNET_CLI_BIN
#error "COOPNET_CLI_BIN must point at the built command-line binary"
#endif
#ifndef COOPNET_FIXTURE_DIR
#error "COOPNET_FIXTURE_DIR must point at the shipped scenario files"
#endif

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;  // stdout and stderr combined
};

RunResult run(const std::string& args) {
    const std::string cmd = std::string(COOPNET_CLI_BIN) + " " + args + " 2>&1";
    RunResult r;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    char buf[512];
    while (std::fgets(buf, sizeof buf, pipe)) r.out += buf;
    const int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string fixture(const std::string& name) {
    return std::string(COOPNET_FIXTURE_DIR) + "/" + name;
}

std::string write_temp(const std::string& name, const std::string& text) {
    std::ofstream f(name);
    REQUIRE(f.good());
    f << text;
    return name;
}

bool contains(const std::string& hay, const std::string& needle) {
    return hay.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("value prints coalition values and member payoffs") {
    const std::string trivial = write_temp(
        "cli_trivial_ic.json",
        R"({"model":"ic","K":1,"gains":[[1.0]],"powers":[1.0],"noise_var":1.0})");

    SECTION("single-link channel decodes one bit per use") {
        const RunResult r = run("value --scenario " + trivial + " --model rx-joint --coalition 0b1");
        CHECK(r.exit_code == 0);
        CHECK(contains(r.out, "1.000000"));
    }

    SECTION("perfect-cooperation value of the shipped channel carries diagnostics") {
        const RunResult r = run("value --scenario " + fixture("example1_ic.json") +
                                " --model tx-perfect --coalition 0b111");
        CHECK(r.exit_code == 0);
        CHECK(contains(r.out, "# saddle: converged=yes"));
        double v = 0.0;
        CHECK(std::sscanf(r.out.c_str(), "%lf", &v) == 1);
        CHECK(v > 0.0);
    }

    SECTION("uncorrelated signatures make the decorrelator a matched filter") {
        const RunResult r = run("value --scenario " + fixture("symmetric_mac.json") +
                                " --model mud-decorrelator --coalition 0b111");
        CHECK(r.exit_code == 0);
        // three users at 20 dB: log2(1 + 100) each
        CHECK(contains(r.out, "6.658211,6.658211,6.658211"));
    }

    SECTION("a TU-game file is read directly") {
        const std::string game = write_temp(
            "cli_pair_game.json",
            R"({"K":3,"values":{"1":0,"2":0,"4":0,"3":1,"5":1,"6":1,"7":1.5}})");
        const RunResult r = run("value --scenario " + game + " --coalition 0b011");
        CHECK(r.exit_code == 0);
        CHECK(contains(r.out, "1.000000"));
    }

    SECTION("masks outside the scenario are rejected") {
        const RunResult r = run("value --scenario " + trivial + " --model rx-joint --coalition 0b10");
        CHECK(r.exit_code == 1);
        CHECK(contains(r.out, "error:"));
    }
}

TEST_CASE("core reports feasibility with witness or certificate") {
    const std::string roomy = write_temp(
        "cli_game_roomy.json",
        R"({"K":3,"values":{"1":0,"2":0,"4":0,"3":1,"5":1,"6":1,"7":1.5}})");
    const std::string tight = write_temp(
        "cli_game_tight.json",
        R"({"K":3,"values":{"1":0,"2":0,"4":0,"3":1,"5":1,"6":1,"7":1.4}})");

    SECTION("symmetric pair demands pin the witness at the equal split") {
        const RunResult r = run("core --scenario " + roomy);
        CHECK(r.exit_code == 0);
        CHECK(contains(r.out, "core: NonEmpty"));
        CHECK(contains(r.out, "(0.500000, 0.500000, 0.500000)"));
    }

    SECTION("lowering the grand value empties the core with a balanced certificate") {
        const RunResult r = run("core --scenario " + tight);
        CHECK(r.exit_code == 10);
        CHECK(contains(r.out, "core: Empty"));
        CHECK(contains(r.out, "family value 1.500000 > grand value 1.400000"));
    }

    SECTION("shipped three-link channel: white-signal grand cannot satisfy beamformed demands") {
        const RunResult r =
            run("core --scenario " + fixture("example1_ic.json") + " --model tx-perfect");
        CHECK(r.exit_code == 10);
        CHECK(contains(r.out, "core: Empty"));
    }

    SECTION("the optimized grand coalition fills the same core") {
        const RunResult r = run("core --scenario " + fixture("example1_ic.json") +
                                " --model tx-perfect --grand-value optimized");
        CHECK(r.exit_code == 0);
        CHECK(contains(r.out, "core: NonEmpty"));
    }

    SECTION("missing scenario file is an error") {
        const RunResult r = run("core --scenario cli_no_such_file.json");
        CHECK(r.exit_code == 1);
        CHECK(contains(r.out, "error:"));
    }
}

TEST_CASE("cohesive reports the blocking partition when the grand value falls short") {
    const std::string weak = write_temp(
        "cli_game_weak.json",
        R"({"K":3,"values":{"1":0,"2":0,"4":0,"3":1,"5":1,"6":1,"7":0.9}})");
    const RunResult bad = run("cohesive --scenario " + weak);
    CHECK(bad.exit_code == 10);
    CHECK(contains(bad.out, "cohesive: no"));
    CHECK(contains(bad.out, "{0,1}|{2}"));

    const RunResult good = run("cohesive --scenario " + fixture("example1_ic.json") +
                               " --model tx-perfect");
    CHECK(good.exit_code == 0);
    CHECK(contains(good.out, "cohesive: yes"));
}

TEST_CASE("mud-stability reports blocking coalitions under noise enhancement") {
    SECTION("orthogonal signatures leave nothing to gain by leaving") {
        const RunResult r =
            run("mud-stability --scenario " + fixture("symmetric_mac.json") + " --detector mmse");
        CHECK(r.exit_code == 0);
        CHECK(contains(r.out, "grand coalition: stable"));
    }

    SECTION("low-SNR decorrelator pays more for nulling than for interference") {
        const std::string lowsnr = write_temp(
            "cli_lowsnr_cdma.json",
            R"({"model":"cdma","K":3,"h":[1.0,1.0,1.0],"P":1.0,"rho":0.5,"sigma2":2.0})");
        const RunResult r = run("mud-stability --scenario " + lowsnr + " --detector decorrelator");
        CHECK(r.exit_code == 10);
        CHECK(contains(r.out, "blocked by {0}"));
    }
}

TEST_CASE("stability-map emits one row per grid point with structure lists") {
    const std::string base = fixture("symmetric_mac.json");

    SECTION("matched SNRs keep the grand coalition together") {
        const RunResult r = run("stability-map --scenario " + base +
                                " --axis \"snr[0]=20:20:1:dB\" --axis \"snr[1]=20:20:1:dB\""
                                " --jobs 1");
        CHECK(r.exit_code == 0);
        CHECK(contains(r.out, "SNR_A_dB,SNR_B_dB,stable_structures"));
        CHECK(contains(r.out, "20,20,\"{0,1,2}\""));
    }

    SECTION("spread SNRs break the grand coalition but something stable remains") {
        const RunResult r = run("stability-map --scenario " + base +
                                " --axis \"snr[0]=40:40:1:dB\" --axis \"snr[1]=-10:-10:1:dB\""
                                " --jobs 1");
        CHECK(r.exit_code == 0);
        CHECK_FALSE(contains(r.out, "{0,1,2}"));
        CHECK(contains(r.out, "40,-10,\"{0"));  // some nonempty structure list
    }

    SECTION("swapping the two swept users mirrors the verdicts") {
        const RunResult ab = run("stability-map --scenario " + base +
                                 " --axis \"snr[0]=0:0:1:dB\" --axis \"snr[1]=30:30:1:dB\""
                                 " --jobs 1");
        const RunResult ba = run("stability-map --scenario " + base +
                                 " --axis \"snr[0]=30:30:1:dB\" --axis \"snr[1]=0:0:1:dB\""
                                 " --jobs 1");
        // user 0 weak in the first run, user 1 weak in the second: the stable
        // structures must be the same up to swapping the two user labels
        CHECK(contains(ab.out, "\"{0}|{1,2}\""));
        CHECK(contains(ba.out, "\"{0,2}|{1}\""));
    }

    SECTION("malformed axes are rejected") {
        CHECK(run("stability-map --scenario " + base + " --axis \"snr[0]=1:2\" --axis \"x\"")
                  .exit_code != 0);
        CHECK(run("stability-map --scenario " + base +
                  " --axis \"snr[0]=1:2:0\" --axis \"snr[1]=1:2:2\"")
                  .exit_code == 1);
        CHECK(run("stability-map --scenario " + base +
                  " --axis \"snr[9]=1:2:2\" --axis \"snr[1]=1:2:2\"")
                  .exit_code == 1);
    }
}

TEST_CASE("pdf-region emits boundary CSVs and the containment verdict") {
    const std::string ex2 = fixture("example2_clustered.json");

    SECTION("strong pair beats the grand coalition on the shipped clustered channel") {
        const RunResult r = run("pdf-region --scenario " + ex2 +
                                " --coalition 0b011 --grid 12 --jobs 1 --out cli_region");
        CHECK(r.exit_code == 10);
        CHECK(contains(r.out, "{1,2} region contains GC projection: game NOT cohesive"));
        CHECK(contains(r.out, "# wrote cli_region_12.csv"));
        CHECK(contains(r.out, "# wrote cli_region_123.csv"));
        CHECK(contains(r.out, "# wrote cli_region_123_projected.csv"));
    }

    SECTION("emitted pair boundary matches an in-process computation to 12 digits") {
        std::ifstream csv("cli_region_12.csv");
        REQUIRE(csv.good());
        std::string header;
        std::getline(csv, header);
        CHECK(header == "w1,w2,R1,R2");

        coopnet::ClusteredMac mac;
        {
            std::ifstream f(ex2);
            std::stringstream ss;
            ss << f.rdbuf();
            mac = std::get<coopnet::ClusteredMac>(coopnet::load_scenario(ss.str()));
        }
        const coopnet::RateRegionSamples region = coopnet::pdf_rate_region(mac, 0b011, 12);
        std::size_t row = 0;
        for (std::string line; std::getline(csv, line); ++row) {
            REQUIRE(row < region.boundary.size());
            std::stringstream cells(line);
            std::string cell;
            std::vector<double> got;
            while (std::getline(cells, cell, ',')) got.push_back(std::stod(cell));
            REQUIRE(got.size() == 4);
            const auto& bs = region.boundary[row];
            for (std::size_t i = 0; i < 2; ++i) {
                CHECK(got[i] == Catch::Approx(bs.weight[i]).margin(1e-11));
                CHECK(got[2 + i] ==
                      Catch::Approx(bs.rates[i]).margin(1e-11).epsilon(1e-11));
            }
        }
        CHECK(row == region.boundary.size());
    }

    SECTION("comparing a region with itself is contained both ways") {
        const std::string nojam = write_temp(
            "cli_nojam_pair.json",
            R"({"model":"clustered","K":2,"hd":[0.5,0.5],"hu":[[0.0,0.6],[0.6,0.0]],)"
            R"("powers":[30.0,30.0]})");
        const RunResult r = run("pdf-region --scenario " + nojam +
                                " --coalition 0b11 --coalition 0b11 --grid 9 --jobs 1"
                                " --out cli_self");
        CHECK(r.exit_code == 0);
        CHECK(contains(r.out, "contained both ways"));
    }

    SECTION("non-nested coalitions cannot be compared") {
        const RunResult r = run("pdf-region --scenario " + ex2 +
                                " --coalition 0b011 --coalition 0b101 --grid 4 --jobs 1");
        CHECK(r.exit_code == 1);
        CHECK(contains(r.out, "nested"));
    }
}

TEST_CASE("verify-examples runs the filtered acceptance suite") {
    const RunResult r = run("verify-examples --filter combinatorics");
    CHECK(r.exit_code == 0);
    CHECK(contains(r.out, "seed: 42"));
    CHECK(contains(r.out, "PASS"));
    CHECK(contains(r.out, "combinatorics-lp-units"));
    CHECK(contains(r.out, "1/1 criteria passed"));

    const RunResult none = run("verify-examples --filter no-such-criterion");
    CHECK(none.exit_code == 1);
}
