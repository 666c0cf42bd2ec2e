// Acceptance harness: runs every criterion of the regression suite and
// prints one PASS/FAIL line each. Exit code 0 iff all selected criteria pass.

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "coopnet/verify.hpp"

#ifndef COOPNET_FIXTURE_DIR
#define COOPNET_FIXTURE_DIR "fixtures"
#endif

int main(int argc, char** argv) {
    CLI::App app{"coopnet acceptance criteria"};
    coopnet::VerifyOptions opt;
    opt.fixture_dir = COOPNET_FIXTURE_DIR;
    app.add_option("--filter", opt.filter, "run only criteria whose name contains this substring");
    app.add_option("--seed", opt.seed, "master seed of the randomized suites (printed)");
    app.add_option("--fixtures", opt.fixture_dir, "directory holding the shipped scenario files");
    app.add_option("--map-out", opt.map_out,
                   "stability-map CSV emitted by the structure-points criterion (empty to skip)");
    CLI11_PARSE(app, argc, argv);

    const auto results = coopnet::run_acceptance(opt);
    return coopnet::report_acceptance(results, std::cout, opt);
}
