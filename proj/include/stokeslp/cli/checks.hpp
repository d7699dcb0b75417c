#ifndef STOKESLP_CLI_CHECKS_HPP
#define STOKESLP_CLI_CHECKS_HPP

#include <functional>
#include <vector>

#include "stokeslp/cli/config.hpp"

namespace stokeslp::cli {

struct CheckRow {
    std::string check;
    int n = 2;
    int N = 64;
    std::string case_name;
    std::string param;
    double residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

// named checks; each maps to one acceptance bullet
const std::vector<std::string>& check_names();

// run one named check (throws ArgumentError on unknown names)
std::vector<CheckRow> run_check(const std::string& name, const RunConfig& config);

// command -> list of checks it runs
std::vector<std::string> checks_for_command(const std::string& command);

// deterministic CSV body (fixed formatting, no timestamps)
std::string rows_to_csv(const std::vector<CheckRow>& rows);

} // namespace stokeslp::cli

#endif
