#include "stokeslp/cli/config.hpp"

#include <fstream>
#include <sstream>

namespace stokeslp::cli {

StokesParams RunConfig::make_params() const { return make_params(n, N); }

StokesParams RunConfig::make_params(int n_override, int N_override) const {
    TorusGrid g(n_override, N_override);
    Coefficient v = Coefficient::constant(V);
    Coefficient v0 = coeff_case == "bump"
                         ? Coefficient::bump(bump_amplitude, bump_center, bump_width, bump_power)
                         : Coefficient::constant(V0);
    return StokesParams(g, v, v0, strip_height);
}

namespace {

void apply_kv(RunConfig& c, const std::string& key, const std::string& value) {
    auto bad = [&](const std::string& why) {
        throw ArgumentError("config key '" + key + "': " + why);
    };
    try {
        if (key == "n") c.n = std::stoi(value);
        else if (key == "N") c.N = std::stoi(value);
        else if (key == "Ls") c.strip_height = std::stod(value);
        else if (key == "case") c.coeff_case = value;
        else if (key == "V") c.V = std::stod(value);
        else if (key == "V0") c.V0 = std::stod(value);
        else if (key == "bump_amplitude") c.bump_amplitude = std::stod(value);
        else if (key == "bump_center") c.bump_center = std::stod(value);
        else if (key == "bump_width") c.bump_width = std::stod(value);
        else if (key == "bump_power") c.bump_power = std::stoi(value);
        else if (key == "seed") c.seed = std::stoull(value);
        else if (key == "outdir") c.outdir = value;
        else if (key == "check") c.check_filter = value;
        else if (key == "tol_scale") c.tol_scale = std::stod(value);
        else bad("unknown key");
    } catch (const std::invalid_argument&) {
        bad("cannot parse value '" + value + "'");
    } catch (const std::out_of_range&) {
        bad("value out of range");
    }
}

void validate(const RunConfig& c) {
    if (c.n < 2 || c.n > 3) throw ArgumentError("config: n must be 2 or 3");
    if (c.N < 8 || (c.N & (c.N - 1)) != 0)
        throw ArgumentError("config: N must be a power of two >= 8");
    if (c.coeff_case != "const" && c.coeff_case != "bump")
        throw ArgumentError("config: case must be 'const' or 'bump'");
    if (c.V < 0.0 || c.V0 < 0.0 || c.bump_amplitude < 0.0)
        throw ArgumentError("config: coefficients must be nonnegative");
    if (c.strip_height <= 0.0 || c.strip_height >= kTwoPi)
        throw ArgumentError("config: Ls must lie in (0, 2 pi)");
    if (c.tol_scale <= 0.0) throw ArgumentError("config: tol_scale must be positive");
}

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

} // namespace

RunConfig parse_config_text(const std::string& text,
                            const std::map<std::string, std::string>& overrides) {
    RunConfig c;
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        std::string body = line.substr(0, line.find('#'));
        body = trim(body);
        if (body.empty()) continue;
        std::size_t eq = body.find('=');
        if (eq == std::string::npos)
            throw ArgumentError("config line " + std::to_string(lineno) +
                                ": expected 'key = value'");
        apply_kv(c, trim(body.substr(0, eq)), trim(body.substr(eq + 1)));
    }
    for (const auto& [k, v] : overrides) apply_kv(c, k, v);
    validate(c);
    return c;
}

RunConfig parse_config(const std::string& path,
                       const std::map<std::string, std::string>& overrides) {
    std::ifstream f(path);
    if (!f) throw ArgumentError("config: cannot open '" + path + "'");
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_config_text(ss.str(), overrides);
}

} // namespace stokeslp::cli
