#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "stokeslp/bvp/solver.hpp"
#include "stokeslp/cli/checks.hpp"
#include "stokeslp/simd/dispatch.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace stokeslp;
using namespace stokeslp::cli;

namespace {

// write-then-rename so concurrent checks never expose partial files
void atomic_write(const fs::path& path, const std::string& content) {
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        f << content;
    }
    fs::rename(tmp, path);
}

// column-based spectrum serialization: one line per (component, mode)
std::string spectrum_text(const SpectralField& f) {
    std::string out = "stokeslp-spectrum v1\n";
    const TorusGrid& g = f.grid();
    out += std::to_string(g.dim()) + " " + std::to_string(g.npts()) + " " +
           std::to_string(f.comps()) + "\n";
    out += "# comp mode_1 .. mode_n re im\n";
    char buf[96];
    for (int c = 0; c < f.comps(); ++c)
        for (std::size_t idx = 0; idx < g.total(); ++idx) {
            cd v = f.at(c, idx);
            if (v == cd{0.0, 0.0}) continue;
            auto m = g.modes(idx);
            out += std::to_string(c);
            for (int d = 0; d < g.dim(); ++d) out += " " + std::to_string(m[d]);
            std::snprintf(buf, sizeof buf, " %.17e %.17e\n", v.real(), v.imag());
            out += buf;
        }
    return out;
}

std::string density_text(const pot::GammaDensity& h) {
    std::string out = "stokeslp-density v1\n";
    const TorusGrid& tg = h.comp[0].tgrid;
    out += std::to_string(tg.dim()) + " " + std::to_string(tg.npts()) + " " +
           std::to_string(h.comp[0].comps) + "\n";
    out += "# gamma_component comp mode_1 .. mode_{n-1} re im\n";
    char buf[96];
    for (int b = 0; b < 2; ++b)
        for (int c = 0; c < h.comp[b].comps; ++c)
            for (std::size_t t = 0; t < h.comp[b].modes(); ++t) {
                cd v = h.comp[b].at(c, t);
                if (v == cd{0.0, 0.0}) continue;
                auto m = tg.modes(t);
                out += std::to_string(b) + " " + std::to_string(c);
                for (int d = 0; d < tg.dim(); ++d) out += " " + std::to_string(m[d]);
                std::snprintf(buf, sizeof buf, " %.17e %.17e\n", v.real(), v.imag());
                out += buf;
            }
    return out;
}

// run one representative Dirichlet solve / DtN application with the
// configured coefficients and serialize the results
void write_solution_artifacts(const RunConfig& cfg, const std::string& which) {
    using namespace stokeslp::bvp;
    StokesParams prm = cfg.make_params();
    Workspace ws(prm);
    std::mt19937_64 rng(cfg.seed);
    pot::GammaDensity f(prm.grid, prm.grid.dim());
    f.comp[0] = random_density(prm.grid, prm.grid.dim(), 4, rng);
    f.comp[1] = random_density(prm.grid, prm.grid.dim(), 4, rng);
    if (prm.v0_zero_on_omega()) {
        pot::GammaDensity nu = pot::normal_density(prm);
        pot::GammaDensity corr = nu;
        corr *= pot::gamma_inner(f, nu, prm.grid.dim()) /
                pot::gamma_inner(nu, nu, prm.grid.dim());
        f -= corr;
    }

    json out;
    out["n"] = prm.grid.dim();
    out["N"] = prm.grid.npts();
    out["case"] = cfg.case_name();
    out["seed"] = cfg.seed;

    if (which == "solve") {
        DirichletProblem pb{prm, f, true};
        DirichletSolution sol = solve_dirichlet(pb, SolveRoute::double_layer, ws);
        atomic_write(fs::path(cfg.outdir) / "solution_spectrum.txt",
                     spectrum_text(sol.field));
        out["pressure_gauge"] = {sol.pressure_gauge.real(), sol.pressure_gauge.imag()};
        json d;
        d["bie_residual"] = sol.diag.bie_residual;
        d["trace_error"] = sol.diag.trace_error;
        d["trace_error_extrapolated"] = sol.diag.trace_error_extrap;
        d["interior_residual_weak"] = sol.diag.interior_residual;
        d["compat_defect"] = sol.diag.compat_defect;
        d["compat_projected"] = sol.diag.compat_projected;
        for (int m = 0; m <= 2; ++m)
            d["stability_constant"].push_back(sol.diag.stability_constant[m]);
        out["diagnostics"] = d;
        atomic_write(fs::path(cfg.outdir) / "solution.json", out.dump(2) + "\n");
    } else {
        DtnResult res = dtn(prm, f, ws);
        atomic_write(fs::path(cfg.outdir) / "neumann_spectrum.txt",
                     density_text(res.neumann));
        out["identity_residual"] = res.identity_residual;
        out["identity_residual_extrapolated"] = res.identity_residual_extrap;
        out["identity_residual_ungauged"] = res.identity_residual_ungauged;
        atomic_write(fs::path(cfg.outdir) / "dtn.json", out.dump(2) + "\n");
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"stokeslp: layer-potential verification engine for the generalized "
                 "Stokes operator on a periodic strip"};
    app.require_subcommand(1);

    std::string config_path;
    std::vector<std::string> sets;
    std::vector<std::string> commands = {"verify-jumps", "verify-green", "verify-lateral",
                                         "spectrum",     "solve",        "dtn",
                                         "all"};
    std::string chosen;
    for (const auto& name : commands) {
        CLI::App* sub = app.add_subcommand(name);
        sub->add_option("--config", config_path, "path to a key = value config file");
        sub->add_option("--set", sets, "override config entries, e.g. --set N=128")
            ->take_all();
        sub->callback([&chosen, name] { chosen = name; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    RunConfig cfg;
    try {
        std::map<std::string, std::string> overrides;
        for (const auto& s : sets) {
            std::size_t eq = s.find('=');
            if (eq == std::string::npos) throw ArgumentError("--set expects key=value");
            overrides[s.substr(0, eq)] = s.substr(eq + 1);
        }
        cfg = config_path.empty() ? parse_config_text("", overrides)
                                  : parse_config(config_path, overrides);
    } catch (const std::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    }

    fs::create_directories(cfg.outdir);

    std::vector<std::string> to_run;
    try {
        to_run = checks_for_command(chosen);
    } catch (const std::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    }
    if (!cfg.check_filter.empty()) {
        std::vector<std::string> filtered;
        for (const auto& c : to_run)
            if (c == cfg.check_filter) filtered.push_back(c);
        if (filtered.empty()) {
            std::cerr << "config error: check '" << cfg.check_filter
                      << "' is not part of command '" << chosen << "'\n";
            return 2;
        }
        to_run = filtered;
    }

    json summary;
    summary["command"] = chosen;
    summary["simd"] = simd::level_name(simd::active_level());
    summary["seed"] = cfg.seed;
    summary["generated_at"] =
        std::chrono::duration_cast<std::chrono::seconds>(
            std::chrono::system_clock::now().time_since_epoch())
            .count();
    json failures = json::array();
    bool all_pass = true;

    for (const auto& name : to_run) {
        std::vector<CheckRow> rows;
        try {
            rows = run_check(name, cfg);
        } catch (const std::exception& e) {
            std::cerr << "check " << name << " failed to run: " << e.what() << "\n";
            json f;
            f["check"] = name;
            f["error"] = e.what();
            failures.push_back(f);
            all_pass = false;
            continue;
        }
        atomic_write(fs::path(cfg.outdir) / (name + ".csv"), rows_to_csv(rows));
        int passed = 0;
        double worst_margin = 0.0;
        for (const auto& r : rows) {
            if (r.pass) {
                ++passed;
            } else {
                all_pass = false;
                json f;
                f["check"] = r.check;
                f["param"] = r.param;
                f["case"] = r.case_name;
                f["N"] = r.N;
                f["residual"] = r.residual;
                f["tolerance"] = r.tolerance;
                failures.push_back(f);
            }
            if (r.tolerance > 0.0)
                worst_margin = std::max(worst_margin, r.residual / r.tolerance);
        }
        json cj;
        cj["rows"] = rows.size();
        cj["passed"] = passed;
        cj["worst_margin"] = worst_margin;
        summary["checks"][name] = cj;
        std::cout << name << ": " << passed << "/" << rows.size() << " rows pass\n";
    }

    // the solve and dtn commands also emit their result artifacts
    try {
        if (chosen == "solve" || chosen == "all") write_solution_artifacts(cfg, "solve");
        if (chosen == "dtn" || chosen == "all") write_solution_artifacts(cfg, "dtn");
    } catch (const std::exception& e) {
        std::cerr << "artifact generation failed: " << e.what() << "\n";
        all_pass = false;
        json f;
        f["check"] = "artifacts";
        f["error"] = e.what();
        failures.push_back(f);
    }

    summary["failures"] = failures;
    summary["ok"] = all_pass;
    atomic_write(fs::path(cfg.outdir) / "summary.json", summary.dump(2) + "\n");

    return all_pass ? 0 : 1;
}
