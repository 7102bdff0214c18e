// Command-line front end: every experiment as a reproducible subcommand
// emitting CSV/JSON plot data plus a manifest recording the full run config.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "vhawkes/generator.hpp"
#include "vhawkes/hawkes.hpp"
#include "vhawkes/ito.hpp"
#include "vhawkes/market_data.hpp"
#include "vhawkes/moments.hpp"
#include "vhawkes/rng.hpp"
#include "vhawkes/stats.hpp"
#include "vhawkes/variance_hawkes.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace vhawkes;

namespace {

constexpr const char* kArtifactVersion = "1.0.0";

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

// Minimal column table that can serialize as CSV or JSON, so every subcommand
// honors --format with one code path.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    void add_row(std::initializer_list<std::string> cells) { rows.emplace_back(cells); }

    void write_csv(std::ostream& os) const {
        for (std::size_t c = 0; c < columns.size(); ++c)
            os << columns[c] << (c + 1 < columns.size() ? "," : "\n");
        for (const auto& row : rows)
            for (std::size_t c = 0; c < row.size(); ++c)
                os << row[c] << (c + 1 < row.size() ? "," : "\n");
    }

    void write_json(std::ostream& os) const {
        json out = json::array();
        for (const auto& row : rows) {
            json obj;
            for (std::size_t c = 0; c < columns.size(); ++c) obj[columns[c]] = row[c];
            out.push_back(obj);
        }
        os << out.dump(2) << "\n";
    }
};

struct OutputSink {
    fs::path dir;
    std::string format;  // "csv" or "json"

    fs::path prepare() const {
        fs::create_directories(dir);
        return dir;
    }

    void write_table(const std::string& stem, const Table& t) const {
        const fs::path path = dir / (stem + "." + format);
        std::ofstream os(path);
        if (!os) throw std::runtime_error("cannot open " + path.string());
        if (format == "json")
            t.write_json(os);
        else
            t.write_csv(os);
    }

    // The manifest goes first so no output ever exists without one.
    void write_manifest(const std::string& subcommand, const json& config) const {
        prepare();
        json manifest;
        manifest["artifact_version"] = kArtifactVersion;
        manifest["subcommand"] = subcommand;
        manifest["format"] = format;
        manifest["config"] = config;
        std::ofstream os(dir / "manifest.json");
        if (!os) throw std::runtime_error("cannot open manifest in " + dir.string());
        os << manifest.dump(2) << "\n";
    }
};

json params_json(const HawkesParams& p) {
    return {{"v", p.v}, {"v0", p.v0}, {"alpha", p.alpha}, {"beta", p.beta}};
}

struct ParamFlags {
    double v = 1.0, alpha = 1.0, beta = 2.0;
    double v0 = -1.0;  // negative means "same as v"

    HawkesParams resolve() const {
        HawkesParams p(v, v0 < 0.0 ? v : v0, alpha, beta);
        validate(p);
        return p;
    }
};

void add_param_flags(CLI::App* cmd, ParamFlags& f) {
    cmd->add_option("--v", f.v, "baseline intensity");
    cmd->add_option("--v0", f.v0, "initial intensity (defaults to --v)");
    cmd->add_option("--alpha", f.alpha, "excitation jump size");
    cmd->add_option("--beta", f.beta, "decay rate");
}

void add_output_flags(CLI::App* cmd, OutputSink& sink) {
    cmd->add_option("--out", sink.dir, "output directory");
    cmd->add_option("--format", sink.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
}

std::ifstream open_input(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open input file " + path);
    return is;
}

// ---- simulate ----------------------------------------------------------

int cmd_simulate(const ParamFlags& flags, double horizon, std::size_t res,
                 std::uint64_t seed, std::size_t n_paths, const OutputSink& sink) {
    const HawkesParams p = flags.resolve();
    if (res == 0) throw std::invalid_argument("--res must be positive");
    if (n_paths == 0) throw std::invalid_argument("--n-paths must be positive");
    sink.write_manifest("simulate", {{"params", params_json(p)},
                                     {"T", horizon},
                                     {"res", res},
                                     {"seed", seed},
                                     {"n_paths", n_paths}});
    for (std::size_t i = 0; i < n_paths; ++i) {
        const auto path = simulate_variance_hawkes(p, horizon, res, derive_seed(seed, i));
        const auto intensity = intensity_on_grid(path.jumps, p, res);
        Table t;
        t.columns = {"t", "count", "intensity", "value"};
        for (std::size_t k = 0; k <= res; ++k)
            t.add_row({fmt(path.dt() * static_cast<double>(k)),
                       std::to_string(path.counts[k]), fmt(intensity[k]),
                       fmt(path.values[k])});
        sink.write_table("path_" + std::to_string(i), t);

        Table arrivals;
        arrivals.columns = {"arrival_time"};
        for (double a : path.jumps.arrivals) arrivals.add_row({fmt(a)});
        sink.write_table("arrivals_" + std::to_string(i), arrivals);
    }
    std::printf("simulate: wrote %zu path(s) to %s\n", n_paths, sink.dir.string().c_str());
    return 0;
}

// ---- moments -----------------------------------------------------------

int cmd_moments(const ParamFlags& flags, double t_max, double t_step, double ode_step,
                const OutputSink& sink) {
    const HawkesParams p = flags.resolve();
    if (t_max < 0.0 || t_step <= 0.0 || ode_step <= 0.0)
        throw std::invalid_argument("t grid and ODE step must be positive");
    sink.write_manifest("moments", {{"params", params_json(p)},
                                    {"t_max", t_max},
                                    {"t_step", t_step},
                                    {"ode_step", ode_step}});
    Table t;
    t.columns = {"t", "e_N", "e_L", "e_L2", "e_NL", "e_N2", "provenance"};
    Table gap;
    gap.columns = {"t", "d_e_N", "d_e_L", "d_e_L2", "d_e_NL", "d_e_N2"};
    const auto n_rows = static_cast<std::size_t>(std::floor(t_max / t_step + 1e-9)) + 1;
    for (std::size_t k = 0; k < n_rows; ++k) {
        const double tk = t_step * static_cast<double>(k);
        const auto ode = ode_moments(p, tk, ode_step);
        const auto cf = closed_form_moments(p, tk);
        t.add_row({fmt(tk), fmt(ode.e_N), fmt(ode.e_L), fmt(ode.e_L2), fmt(ode.e_NL),
                   fmt(ode.e_N2), "ode_oracle"});
        t.add_row({fmt(tk), fmt(cf.e_N), fmt(cf.e_L), fmt(cf.e_L2), fmt(cf.e_NL),
                   fmt(cf.e_N2), "closed_form"});
        gap.add_row({fmt(tk), fmt(cf.e_N - ode.e_N), fmt(cf.e_L - ode.e_L),
                     fmt(cf.e_L2 - ode.e_L2), fmt(cf.e_NL - ode.e_NL),
                     fmt(cf.e_N2 - ode.e_N2)});
    }
    sink.write_table("moments", t);
    sink.write_table("moments_discrepancy", gap);
    std::printf("moments: %zu grid times written to %s\n", n_rows,
                sink.dir.string().c_str());
    return 0;
}

// ---- verify-ito --------------------------------------------------------

int cmd_verify_ito(const ParamFlags& flags, double horizon, std::size_t res,
                   std::size_t n_runs, std::uint64_t seed, const OutputSink& sink) {
    const HawkesParams p = flags.resolve();
    if (n_runs == 0) throw std::invalid_argument("--n-runs must be positive");
    sink.write_manifest("verify-ito", {{"params", params_json(p)},
                                       {"T", horizon},
                                       {"res", res},
                                       {"seed", seed},
                                       {"n_runs", n_runs}});
    Table summary;
    summary.columns = {"run", "fraction_within_20pct", "max_abs_error", "terminal_error",
                       "n_infinite"};
    for (std::size_t i = 0; i < n_runs; ++i) {
        ItoExperimentConfig cfg;
        cfg.params = p;
        cfg.horizon = horizon;
        cfg.res = res;
        cfg.seed = derive_seed(seed, i);
        const auto cmp = run_ito_experiment(cfg);
        Table t;
        t.columns = {"t", "actual", "conjectured", "telescoped", "pct_error"};
        for (std::size_t k = 0; k < cmp.t.size(); ++k)
            t.add_row({fmt(cmp.t[k]), fmt(cmp.actual[k]), fmt(cmp.conjectured[k]),
                       fmt(cmp.telescoped[k]), fmt(cmp.pct_error[k])});
        sink.write_table("ito_run_" + std::to_string(i), t);
        const auto s = percentage_error_summary(cmp);
        summary.add_row({std::to_string(i), fmt(s.fraction_within_20pct),
                         fmt(s.max_abs_error), fmt(s.terminal_error),
                         std::to_string(s.n_infinite)});
    }
    sink.write_table("ito_summary", summary);
    std::printf("verify-ito: %zu run(s) at res %zu written to %s\n", n_runs, res,
                sink.dir.string().c_str());
    return 0;
}

// ---- conjecture --------------------------------------------------------

int cmd_conjecture(const ParamFlags& flags, double horizon, std::size_t n_samples,
                   std::size_t n_panels, std::uint64_t seed, const OutputSink& sink) {
    const HawkesParams p = flags.resolve();
    if (n_panels == 0) throw std::invalid_argument("--n-panels must be positive");
    sink.write_manifest("conjecture", {{"params", params_json(p)},
                                       {"T", horizon},
                                       {"n_samples", n_samples},
                                       {"n_panels", n_panels},
                                       {"seed", seed}});
    Table ks;
    ks.columns = {"panel", "ks_distance", "ks_critical_1pct"};
    const double crit = ks_critical_value(0.01, n_samples, n_samples);
    for (std::size_t i = 0; i < n_panels; ++i) {
        const auto res = conjecture_check(p, horizon, n_samples, derive_seed(seed, i));
        Table t;
        t.columns = {"subordinated", "scaled_normal"};
        for (std::size_t k = 0; k < res.subordinated.size(); ++k)
            t.add_row({fmt(res.subordinated[k]), fmt(res.scaled_normal[k])});
        sink.write_table("conjecture_panel_" + std::to_string(i), t);
        ks.add_row({std::to_string(i), fmt(res.ks_distance), fmt(crit)});
    }
    sink.write_table("conjecture_ks", ks);
    std::printf("conjecture: %zu panel(s) of %zu samples written to %s\n", n_panels,
                n_samples, sink.dir.string().c_str());
    return 0;
}

// ---- fit ---------------------------------------------------------------

std::vector<FitGridPoint> read_grid(const std::string& path) {
    auto is = open_input(path);
    std::string line;
    if (!std::getline(is, line) || line.find("v,v0,alpha,beta,a") != 0)
        throw std::runtime_error("grid file must start with header v,v0,alpha,beta,a");
    std::vector<FitGridPoint> grid;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        FitGridPoint g;
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream row(line);
        if (!(row >> g.v >> g.v0 >> g.alpha >> g.beta >> g.a))
            throw std::runtime_error("unparseable grid row: " + line);
        grid.push_back(g);
    }
    return grid;
}

int cmd_fit(const std::string& input, const std::string& grid_path, double b,
            double horizon, std::size_t n_sim, std::uint64_t seed,
            const OutputSink& sink) {
    auto is = open_input(input);
    const auto prices = ingest_prices(is);
    const auto target = log_returns(prices);
    const auto grid = read_grid(grid_path);
    sink.write_manifest("fit", {{"input", input},
                                {"grid", grid_path},
                                {"b", b},
                                {"T", horizon},
                                {"n_sim", n_sim},
                                {"seed", seed},
                                {"n_returns", target.n},
                                {"sigma_hat", target.sigma_hat}});
    const auto fit = fit_clustered_gaussian(target, grid, b, horizon, n_sim, seed);
    Table t;
    t.columns = {"v", "v0", "alpha", "beta", "a", "score"};
    for (const auto& row : fit.table)
        t.add_row({fmt(row.point.v), fmt(row.point.v0), fmt(row.point.alpha),
                   fmt(row.point.beta), fmt(row.point.a), fmt(row.score)});
    sink.write_table("fit_table", t);
    std::printf("fit: best point v=%g v0=%g alpha=%g beta=%g a=%g (mean KS %.4f)\n",
                fit.best.params.v, fit.best.params.v0, fit.best.params.alpha,
                fit.best.params.beta, fit.best.a, fit.score);
    return 0;
}

// ---- qq ----------------------------------------------------------------

int cmd_qq(const std::string& input, std::size_t n_quantiles, const OutputSink& sink) {
    auto is = open_input(input);
    std::vector<double> data;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        try {
            data.push_back(std::stod(line));
        } catch (const std::exception&) {
            throw std::runtime_error("unparseable value in " + input + ": " + line);
        }
    }
    if (data.empty()) throw std::runtime_error("empty input file " + input);
    sink.write_manifest("qq", {{"input", input},
                               {"n_quantiles", n_quantiles},
                               {"n_values", data.size()}});
    const auto table = qq_exponential(data, n_quantiles);
    Table t;
    t.columns = {"level", "empirical", "exponential"};
    for (std::size_t i = 0; i < table.levels.size(); ++i)
        t.add_row({fmt(table.levels[i]), fmt(table.empirical[i]),
                   fmt(table.exponential[i])});
    sink.write_table("qq", t);
    std::printf("qq: %zu quantile pairs written to %s\n", table.levels.size(),
                sink.dir.string().c_str());
    return 0;
}

// ---- profile -----------------------------------------------------------

int cmd_profile(const std::string& input, const OutputSink& sink) {
    auto is = open_input(input);
    std::string line;
    if (!std::getline(is, line) || line.find("day,minute,volume") != 0)
        throw std::runtime_error("volume file must start with header day,minute,volume");
    VolumeSeries series;
    long prev_day = -1;
    std::size_t row_number = 1;
    while (std::getline(is, line)) {
        ++row_number;
        if (line.empty()) continue;
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream row(line);
        long day, minute;
        double volume;
        if (!(row >> day >> minute >> volume))
            throw std::runtime_error("unparseable volume row " +
                                     std::to_string(row_number));
        if (day != prev_day) {
            if (prev_day >= 0) series.day_boundaries.push_back(series.minutes.size());
            prev_day = day;
        }
        series.minutes.push_back(minute);
        series.volumes.push_back(volume);
    }
    if (!series.minutes.empty()) series.day_boundaries.push_back(series.minutes.size());
    sink.write_manifest("profile", {{"input", input},
                                    {"n_minutes", series.minutes.size()},
                                    {"n_days", series.day_boundaries.size()}});
    const auto profile = daily_volume_profile(series);
    Table t;
    t.columns = {"minute", "mean_volume"};
    for (std::size_t m = 0; m < profile.size(); ++m)
        t.add_row({std::to_string(m), fmt(profile[m])});
    sink.write_table("profile", t);
    std::printf("profile: %zu minute bins written to %s\n", profile.size(),
                sink.dir.string().c_str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"variance-Hawkes simulation and verification toolkit"};
    app.require_subcommand(1);

    ParamFlags flags;
    OutputSink sink{fs::path("."), "csv"};
    double horizon = 1.0;
    std::size_t res = 1000;
    std::uint64_t seed = 7;
    std::size_t n_paths = 1;

    auto* sim = app.add_subcommand("simulate", "jump-count and subordinated paths");
    add_param_flags(sim, flags);
    sim->add_option("--T", horizon, "horizon");
    sim->add_option("--res", res, "grid resolution");
    sim->add_option("--seed", seed, "RNG seed");
    sim->add_option("--n-paths", n_paths, "number of paths");
    add_output_flags(sim, sink);

    double t_max = 2.0, t_step = 0.01, ode_step = 1e-5;
    auto* mom = app.add_subcommand("moments", "moment tables with discrepancy audit");
    add_param_flags(mom, flags);
    mom->add_option("--t-max", t_max, "table horizon");
    mom->add_option("--t-step", t_step, "table step");
    mom->add_option("--ode-step", ode_step, "RK4 step");
    add_output_flags(mom, sink);

    ParamFlags ito_flags;
    ito_flags.v = 5000.0;
    ito_flags.alpha = 600.0;
    ito_flags.beta = 800.0;
    std::size_t ito_res = 1u << 20, n_runs = 16;
    auto* ito = app.add_subcommand("verify-ito", "discrete stochastic-calculus check");
    add_param_flags(ito, ito_flags);
    ito->add_option("--T", horizon, "horizon");
    ito->add_option("--res", ito_res, "grid resolution");
    ito->add_option("--n-runs", n_runs, "batch size");
    ito->add_option("--seed", seed, "RNG seed");
    add_output_flags(ito, sink);

    std::size_t n_samples = 1u << 14, n_panels = 16;
    auto* conj = app.add_subcommand("conjecture", "terminal distribution comparison");
    add_param_flags(conj, flags);
    conj->add_option("--T", horizon, "horizon");
    conj->add_option("--n", n_samples, "samples per panel");
    conj->add_option("--n-panels", n_panels, "panel count");
    conj->add_option("--seed", seed, "RNG seed");
    add_output_flags(conj, sink);

    std::string input, grid_path;
    double b = 1.0 / std::exp(1.0);
    std::size_t n_sim = 8;
    auto* fit = app.add_subcommand("fit", "grid fit of the clustered return model");
    fit->add_option("--input", input, "price CSV (date,close)")->required();
    fit->add_option("--grid", grid_path, "grid CSV (v,v0,alpha,beta,a)")->required();
    fit->add_option("--b", b, "return-model scale b");
    fit->add_option("--T", horizon, "model horizon");
    fit->add_option("--n-sim", n_sim, "simulations per grid point");
    fit->add_option("--seed", seed, "RNG seed");
    add_output_flags(fit, sink);

    std::size_t n_quantiles = 99;
    auto* qq = app.add_subcommand("qq", "exponential Q-Q table");
    qq->add_option("--input", input, "one value per line")->required();
    qq->add_option("--quantiles", n_quantiles, "number of quantile levels");
    add_output_flags(qq, sink);

    auto* prof = app.add_subcommand("profile", "mean intraday volume profile");
    prof->add_option("--input", input, "volume CSV (day,minute,volume)")->required();
    add_output_flags(prof, sink);

    CLI11_PARSE(app, argc, argv);

    try {
        if (sim->parsed()) return cmd_simulate(flags, horizon, res, seed, n_paths, sink);
        if (mom->parsed()) return cmd_moments(flags, t_max, t_step, ode_step, sink);
        if (ito->parsed())
            return cmd_verify_ito(ito_flags, horizon, ito_res, n_runs, seed, sink);
        if (conj->parsed())
            return cmd_conjecture(flags, horizon, n_samples, n_panels, seed, sink);
        if (fit->parsed()) return cmd_fit(input, grid_path, b, horizon, n_sim, seed, sink);
        if (qq->parsed()) return cmd_qq(input, n_quantiles, sink);
        if (prof->parsed()) return cmd_profile(input, sink);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
