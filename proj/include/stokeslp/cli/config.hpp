#ifndef STOKESLP_CLI_CONFIG_HPP
#define STOKESLP_CLI_CONFIG_HPP

#include <map>
#include <string>

#include "stokeslp/ops/params.hpp"

namespace stokeslp::cli {

// Plain-text configuration: one `key = value` per line, '#' comments.
// Command-line --set key=value entries override file keys.
struct RunConfig {
    int n = 2;
    int N = 64;
    double strip_height = M_PI;
    // coefficient case: "const" (V, V0 numbers) or "bump" (V constant, V0 a
    // bump profile on the complement strip)
    std::string coeff_case = "const";
    double V = 1.0;
    double V0 = 1.0;
    double bump_amplitude = 1.0;
    double bump_center = 1.5 * M_PI;
    double bump_width = 0.35 * M_PI;
    int bump_power = 8;
    unsigned long long seed = 1234;
    std::string outdir = "out";
    std::string check_filter; // run only the named check when non-empty
    double tol_scale = 1.0;   // global safety multiplier on tolerances

    StokesParams make_params() const;
    StokesParams make_params(int n_override, int N_override) const;
    std::string case_name() const { return coeff_case; }
};

// throws ArgumentError on malformed content
RunConfig parse_config(const std::string& path,
                       const std::map<std::string, std::string>& overrides);

RunConfig parse_config_text(const std::string& text,
                            const std::map<std::string, std::string>& overrides);

} // namespace stokeslp::cli

#endif
