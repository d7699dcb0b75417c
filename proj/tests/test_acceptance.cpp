// Acceptance suite: every verification bullet runs at its stated tolerance
// and reports one pass/fail line. The rows behind each line are the same
// ones the CLI emits.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>

#include "stokeslp/cli/checks.hpp"

using namespace stokeslp::cli;

namespace {

RunConfig default_config() {
    RunConfig cfg;
    cfg.seed = 1234;
    return cfg;
}

bool run_criterion(int number, const std::string& name) {
    RunConfig cfg = default_config();
    std::vector<CheckRow> rows = run_check(name, cfg);
    bool ok = true;
    double worst = 0.0;
    for (const auto& r : rows) {
        ok = ok && r.pass;
        if (r.tolerance > 0.0) worst = std::max(worst, r.residual / r.tolerance);
        if (!r.pass)
            std::printf("        failing row: %s [%s, N=%d]: residual %.3e > tol %.3e\n",
                        r.param.c_str(), r.case_name.c_str(), r.N, r.residual, r.tolerance);
    }
    std::printf("[%s] criterion %2d: %-22s (%zu rows, worst margin %.2e)\n",
                ok ? "PASS" : "FAIL", number, name.c_str(), rows.size(), worst);
    std::fflush(stdout);
    return ok;
}

} // namespace

TEST_CASE("criterion 1: residue lemma") { CHECK(run_criterion(1, "residue-lemma")); }
TEST_CASE("criterion 2: exact inverse symbol") { CHECK(run_criterion(2, "inverse-symbol")); }
TEST_CASE("criterion 3: lateral limits") { CHECK(run_criterion(3, "lateral-limits")); }
TEST_CASE("criterion 4: green identities") { CHECK(run_criterion(4, "green-identities")); }
TEST_CASE("criterion 5: kernel classification") {
    CHECK(run_criterion(5, "kernel-classification"));
}
TEST_CASE("criterion 6: jump relations") { CHECK(run_criterion(6, "jump-relations")); }
TEST_CASE("criterion 7: symbol asymptotics") {
    CHECK(run_criterion(7, "symbol-asymptotics"));
}
TEST_CASE("criterion 8: invertibility theorems") { CHECK(run_criterion(8, "invertibility")); }
TEST_CASE("criterion 9: well-posedness") { CHECK(run_criterion(9, "wellposedness")); }
TEST_CASE("criterion 10: dtn and no-jump") { CHECK(run_criterion(10, "dtn-nojump")); }
TEST_CASE("criterion 11: adjoint structure") {
    CHECK(run_criterion(11, "adjoint-structure"));
}
