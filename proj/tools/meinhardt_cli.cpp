// meinhardt: command-line front end (simulate, measure, estimate, repol, campaign, plot).
// Exit codes: 0 ok, 1 usage/config, 2 data, 3 numeric failure.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "meinhardt/error.hpp"
#include "meinhardt/estimator.hpp"
#include "meinhardt/experiments.hpp"
#include "meinhardt/io.hpp"
#include "meinhardt/kernel.hpp"
#include "meinhardt/measurement.hpp"
#include "meinhardt/model.hpp"
#include "meinhardt/plot.hpp"
#include "meinhardt/solver.hpp"

namespace fs = std::filesystem;
using namespace meinhardt;
using io::json;

namespace {

struct Globals {
    std::string config = "default";
    std::vector<std::string> overrides;
    std::uint64_t seed = 1;
    std::string out = ".";
    unsigned workers = 1;
    bool paper_scale = false;
};

// Everything a simulation needs; filled from defaults, then the config file, then --set.
struct RunConfig {
    ModelParams params = default_params();
    std::size_t m = 500;
    double L = 20.0;
    double T = 100.0;
    std::optional<std::size_t> n_steps;
    double dt = 0.01;
    Scheme scheme = Scheme::SemiImplicitDiffusion;
    std::size_t record_stride = 10;
    double peak_height = 2.0;
    double baseline = 0.8;

    TorusGrid grid() const { return TorusGrid(L, m); }
    std::size_t steps() const {
        if (n_steps) return *n_steps;
        if (!(dt > 0.0)) throw ConfigError("dt must be positive");
        return static_cast<std::size_t>(std::llround(T / dt));
    }
    SolverConfig solver(std::uint64_t seed) const {
        SolverConfig c;
        c.T = T;
        c.n_steps = steps();
        c.scheme = scheme;
        c.seed = seed;
        c.record_stride = record_stride;
        return c;
    }
    json to_json() const {
        json j;
        j["params"] = io::to_json(params);
        j["m"] = m;
        j["L"] = L;
        j["T"] = T;
        j["n_steps"] = steps();
        j["scheme"] = meinhardt::to_string(scheme);
        j["record_stride"] = record_stride;
        j["peak_height"] = peak_height;
        j["baseline"] = baseline;
        return j;
    }
};

std::size_t parse_count(const std::string& key, const std::string& v) {
    const double d = parse_double(key, v);
    if (!(d >= 0.0) || d != std::floor(d)) throw ConfigError("key '" + key + "' must be a non-negative integer");
    return static_cast<std::size_t>(d);
}

void apply_keys(RunConfig& rc, const std::map<std::string, std::string>& kv) {
    static const std::set<std::string> model_keys{"D_A", "D_I", "r_A", "r_I", "b_A", "b_I", "zeta_A",
                                                  "zeta_I", "a", "sigma_A", "sigma_I", "norm"};
    rc.params = params_from_key_values(kv, rc.params);
    for (const auto& [k, v] : kv) {
        if (model_keys.count(k)) continue;
        if (k == "m") rc.m = parse_count(k, v);
        else if (k == "L") rc.L = parse_double(k, v);
        else if (k == "T") rc.T = parse_double(k, v);
        else if (k == "n_steps") rc.n_steps = parse_count(k, v);
        else if (k == "dt") { rc.dt = parse_double(k, v); rc.n_steps.reset(); }
        else if (k == "scheme") rc.scheme = parse_scheme(v);
        else if (k == "record_stride") rc.record_stride = parse_count(k, v);
        else if (k == "peak_height") rc.peak_height = parse_double(k, v);
        else if (k == "baseline") rc.baseline = parse_double(k, v);
        else throw ConfigError("unknown config key '" + k + "'");
    }
    if (kv.count("n_steps") && kv.count("dt")) throw ConfigError("give either n_steps or dt, not both");
}

RunConfig load_config(const Globals& g, RunConfig rc) {
    if (g.config != "default") {
        std::ifstream in(g.config);
        if (!in) throw ConfigError("cannot open config file '" + g.config + "'");
        apply_keys(rc, parse_key_values(in));
    }
    std::map<std::string, std::string> kv;
    for (const auto& s : g.overrides) {
        const auto eq = s.find('=');
        if (eq == std::string::npos) throw ConfigError("--set expects key=value, got '" + s + "'");
        kv[s.substr(0, eq)] = s.substr(eq + 1);
    }
    apply_keys(rc, kv);
    for (const auto& w : rc.params.validate()) std::cerr << "warning: " << w << '\n';
    return rc;
}

void print_json(const json& j) { std::cout << j.dump(2) << '\n'; }

// ---- subcommands ----------------------------------------------------------------------------

int cmd_simulate(const Globals& g, const std::vector<std::string>& argv) {
    RunConfig rc;
    if (g.paper_scale) rc.m = 2000;
    rc = load_config(g, rc);
    const auto grid = rc.grid();
    const auto cfg = rc.solver(g.seed);
    const auto init = default_initial_condition(grid, rc.params, rc.peak_height, rc.baseline);
    const auto traj = simulate(rc.params, init, cfg, grid);
    const fs::path out(g.out);
    io::export_trajectory(out, "trajectory", traj);
    io::write_manifest(out, "simulate", argv, rc.to_json(), g.seed);
    std::cout << "simulated " << cfg.n_steps << " steps on m = " << grid.size() << ", " << traj.states.size()
              << " frames -> " << (out / "trajectory_A.csv").string() << '\n';
    if (traj.discarded) {
        std::cout << "note: path went negative at step " << *traj.first_negative_step << " (flagged as discarded)\n";
    }
    return 0;
}

int cmd_measure(const Globals& g, const std::vector<std::string>& argv, const std::string& traj_dir, double delta,
                std::size_t M, std::size_t stride, const std::string& mode, bool matrix_csv) {
    const auto traj = io::import_trajectory(traj_dir.empty() ? fs::path(g.out) : fs::path(traj_dir), "trajectory");
    const double L = traj.grid.length();
    if (!(delta > 0.0)) delta = 0.05 * L;
    const auto kernel = bump_kernel();
    const auto layout = MeasurementLayout::regular(M, L, delta);
    for (const auto& w : layout.validate(traj.grid)) std::cerr << "warning: " << w << '\n';
    const auto ms = measure_trajectory(traj, layout, kernel, stride, parse_laplacian_mode(mode));
    const fs::path out(g.out);
    io::export_measurements(out / "measurements.csv", ms);
    if (matrix_csv) io::export_dataset_csv(out / "local_measurements.csv", ms.A_loc, L);
    json cfg;
    cfg["trajectory"] = traj_dir.empty() ? g.out : traj_dir;
    cfg["delta"] = delta;
    cfg["M"] = M;
    cfg["time_stride"] = stride;
    cfg["laplacian_mode"] = mode;
    io::write_manifest(out, "measure", argv, cfg, traj.config.seed);
    std::cout << "measured " << ms.times.size() << " frames x " << ms.M() << " channels (delta = " << delta
              << ") -> " << (out / "measurements.csv").string() << '\n';
    return 0;
}

int cmd_estimate(const Globals& g, const std::vector<std::string>& argv, const std::string& measurements,
                 const std::string& csv, double alpha, std::optional<double> sigma_A, double L, double frame_dt,
                 bool header) {
    EstimateReport report;
    if (!csv.empty()) {
        const auto ds = io::ingest_csv(csv, L, frame_dt, header);
        report = io::estimate_from_dataset(ds, alpha);
    } else if (!measurements.empty()) {
        auto ms = io::import_measurements(measurements);
        if (!ms.has_laplacian()) ms.A_lap = fd_laplacian_measurements(ms.A_loc, ms.layout, ms.L);
        const auto kernel = kernel_by_name(ms.kernel_name);
        report = confidence_intervals(augmented_mle(ms), kernel, sigma_A, alpha);
    } else {
        throw ConfigError("estimate needs --measurements PATH or --csv PATH");
    }
    const auto j = io::to_json(report);
    std::cout << io::summary_line(report) << '\n';
    print_json(j);
    if (g.out != ".") {
        const fs::path out(g.out);
        io::write_json(out / "estimate.json", j);
        json cfg;
        cfg["input"] = csv.empty() ? measurements : csv;
        cfg["alpha"] = alpha;
        cfg["L"] = L;
        cfg["frame_dt"] = frame_dt;
        io::write_manifest(out, "estimate", argv, cfg, g.seed);
    }
    return 0;
}

int cmd_repol(const Globals& g, const std::vector<std::string>& argv, std::vector<double> sigmas,
              std::size_t replicates, double gamma, double T, bool stop_early) {
    RunConfig rc;
    rc.T = T;
    if (g.paper_scale) rc.m = 2000;
    rc = load_config(g, rc);
    if (g.paper_scale && replicates < 500) replicates = 500;
    RepolSetup setup;
    setup.grid = rc.grid();
    setup.T = rc.T;
    setup.dt = rc.T / static_cast<double>(rc.steps());
    setup.scheme = rc.scheme;
    setup.record_stride = rc.record_stride;
    setup.peak_height = rc.peak_height;
    setup.baseline = rc.baseline;
    setup.stop_at_repolarisation = stop_early;
    const auto stats = repol_sweep(rc.params, sigmas, replicates, gamma, g.seed, setup, g.workers);
    const fs::path out(g.out);
    io::write_repol_csv(out / "repol_tau.csv", stats);
    io::write_repol_summary(out / "repol_summary.csv", stats);
    auto cfg = rc.to_json();
    cfg["sigmas"] = sigmas;
    cfg["replicates"] = replicates;
    cfg["gamma"] = gamma;
    cfg["stop_at_repolarisation"] = stop_early;
    io::write_manifest(out, "repol", argv, cfg, g.seed);
    for (const auto& s : stats) {
        std::cout << "sigma_A = " << s.sigma_A << ": mean tau = " << s.summary.mean << " (n = " << s.tau_samples.size()
                  << ", discarded " << s.n_discarded_negative << ", never " << s.n_never << ")\n";
    }
    return 0;
}

int cmd_campaign(const Globals& g, const std::vector<std::string>& argv, const std::string& scenario,
                 const std::string& policy, std::size_t fixed_M, std::vector<double> deltas_frac,
                 std::size_t replicates, double T, bool spectral, bool sigma_unknown, const std::string& mode,
                 std::size_t time_stride) {
    RunConfig rc;
    rc.T = T;
    rc.scheme = Scheme::ExplicitEulerMaruyama;
    if (g.paper_scale) {
        rc.m = 2000;
        replicates = std::max<std::size_t>(replicates, 500);
        if (time_stride == 0) time_stride = 100;
    }
    if (time_stride == 0) time_stride = 1;
    rc.dt = 0.0; // sentinel: n = m^2 / 4 unless the config gives n_steps or dt
    rc = load_config(g, rc);
    if (!rc.n_steps && rc.dt == 0.0) rc.n_steps = rc.m * rc.m / 4;
    McCampaign c;
    c.replicates = replicates;
    c.master_seed = g.seed;
    for (double f : deltas_frac) c.delta_grid.push_back(f * rc.L);
    c.policies.clear();
    if (policy == "fixed" || policy == "both") c.policies.push_back(MPolicy::fixed(fixed_M));
    if (policy == "scaled" || policy == "both") c.policies.push_back(MPolicy::scaled());
    if (c.policies.empty()) throw ConfigError("--policy must be fixed, scaled or both");
    c.scenario = parse_scenario(scenario);
    c.params = rc.params;
    c.grid = rc.grid();
    c.T = rc.T;
    c.n_steps = rc.steps();
    c.scheme = rc.scheme;
    c.time_stride = time_stride;
    c.laplacian_mode = parse_laplacian_mode(mode);
    c.sigma_known = !sigma_unknown;
    c.peak_height = rc.peak_height;
    c.baseline = rc.baseline;
    c.spectral = spectral;
    c.workers = g.workers;
    const auto result = estimation_campaign(c, bump_kernel());
    const fs::path out(g.out);
    io::write_campaign_table(out / "campaign.csv", c, result);
    auto cfg = rc.to_json();
    cfg["scenario"] = scenario;
    cfg["policy"] = policy;
    cfg["fixed_M"] = fixed_M;
    cfg["delta_fractions"] = deltas_frac;
    cfg["replicates"] = replicates;
    cfg["time_stride"] = time_stride;
    cfg["laplacian_mode"] = mode;
    cfg["spectral"] = spectral;
    cfg["sigma_known"] = !sigma_unknown;
    io::write_manifest(out, "campaign", argv, cfg, g.seed);
    for (const auto& cell : result.cells) {
        std::cout << "delta = " << cell.delta << " " << cell.policy << " (M = " << cell.M << "): rmse = " << cell.rmse
                  << ", mean = " << cell.mean_estimate << ", n = " << cell.n << '\n';
    }
    for (const auto& [label, s] : result.slopes) std::cout << "slope " << label << " = " << s << '\n';
    if (result.n_discarded) std::cout << "discarded paths: " << result.n_discarded << '\n';
    return 0;
}

int cmd_plot(const Globals& g, const std::string& kind, const std::string& input, std::string output,
             const std::string& title) {
    if (input.empty()) throw ConfigError("plot needs --input CSV");
    if (output.empty()) output = (fs::path(g.out) / (kind + ".svg")).string();
    std::string svg;
    if (kind == "heatmap") {
        svg = plot::heatmap_svg(io::read_heatmap(input), title.empty() ? "activator" : title);
    } else if (kind == "boxplot") {
        const auto t = io::read_table(input);
        const auto cs = t.column("sigma"), ct = t.column("tau");
        std::map<double, std::vector<double>> groups;
        for (std::size_t r = 0; r < t.rows.size(); ++r) groups[t.number(r, cs)].push_back(t.number(r, ct));
        svg = plot::boxplot_svg(groups, title.empty() ? "time to repolarisation" : title);
    } else if (kind == "loglog") {
        const auto t = io::read_table(input);
        const auto cd = t.column("delta"), cp = t.column("policy"), cr = t.column("rmse");
        std::map<std::string, plot::Series> by;
        for (std::size_t r = 0; r < t.rows.size(); ++r) {
            auto& s = by[t.rows[r][cp]];
            s.label = t.rows[r][cp];
            s.x.push_back(t.number(r, cd));
            s.y.push_back(t.number(r, cr));
        }
        std::vector<plot::Series> series;
        for (auto& [_, s] : by) series.push_back(std::move(s));
        svg = plot::loglog_svg(series, title.empty() ? "RMSE of D_hat" : title);
    } else {
        throw ConfigError("--kind must be heatmap, boxplot or loglog");
    }
    auto f = io::open_out(output);
    f << svg;
    std::cout << "wrote " << output << '\n';
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    const std::vector<std::string> args(argv, argv + argc);
    CLI::App app{"Stochastic Meinhardt model: simulation, local measurements and diffusivity estimation"};
    app.require_subcommand(1);
    Globals g;
    auto add_globals = [&](CLI::App* sub) {
        sub->add_option("--config", g.config, "key = value config file, or 'default'");
        sub->add_option("--set", g.overrides, "override a config key (key=value), repeatable");
        sub->add_option("--seed", g.seed, "master seed");
        sub->add_option("--out", g.out, "output directory");
        sub->add_option("--workers", g.workers, "worker threads")->check(CLI::PositiveNumber);
        sub->add_flag("--paper-scale", g.paper_scale, "m = 2000, 500 replicates");
    };

    auto* sim = app.add_subcommand("simulate", "simulate one path and write heatmaps + metadata");
    add_globals(sim);

    std::string traj_dir, mode = "grid";
    double delta = 0.0;
    std::size_t M = 5, stride = 1;
    bool matrix_csv = false;
    auto* meas = app.add_subcommand("measure", "trajectory -> local and Laplacian measurements");
    add_globals(meas);
    meas->add_option("--trajectory", traj_dir, "directory holding trajectory_*.csv (default: --out)");
    meas->add_option("--delta", delta, "kernel resolution (default 0.05 L)");
    meas->add_option("--M", M, "number of channels")->check(CLI::PositiveNumber);
    meas->add_option("--time-stride", stride, "use every k-th recorded frame")->check(CLI::PositiveNumber);
    meas->add_option("--laplacian", mode, "analytic or grid");
    meas->add_flag("--matrix-csv", matrix_csv, "also write local_measurements.csv (plain matrix)");

    std::string ms_path, csv_path;
    double alpha = 0.1, L = 20.0, frame_dt = 1.0;
    std::optional<double> sigma_A;
    bool header = false;
    auto* est = app.add_subcommand("estimate", "augmented MLE with confidence intervals");
    add_globals(est);
    est->add_option("--measurements", ms_path, "measurement CSV written by 'measure'");
    est->add_option("--csv", csv_path, "external matrix CSV (rows = frames, columns = channels)");
    est->add_option("--alpha", alpha, "1 - confidence level");
    est->add_option("--sigma-A", sigma_A, "known noise level (otherwise realized variation)");
    est->add_option("--L", L, "domain length for external data");
    est->add_option("--frame-dt", frame_dt, "time between frames for external data");
    est->add_flag("--header", header, "first CSV row holds x positions");

    std::vector<double> sigmas{0.0, 0.02, 0.04, 0.06, 0.08, 0.10};
    std::size_t replicates = 200;
    double gamma = 1.2, repol_T = 100.0;
    bool stop_early = false;
    auto* rep = app.add_subcommand("repol", "time-to-repolarisation sweep over sigma_A");
    add_globals(rep);
    rep->add_option("--sigmas", sigmas, "noise levels")->delimiter(',');
    rep->add_option("--replicates", replicates, "replicates per noise level")->check(CLI::PositiveNumber);
    rep->add_option("--gamma", gamma, "repolarisation threshold");
    rep->add_option("--T", repol_T, "time horizon");
    rep->add_flag("--stop-early", stop_early, "stop each path at repolarisation");

    std::string scenario = "linear", policy = "both", camp_mode = "grid";
    std::size_t fixed_M = 5, camp_reps = 200, time_stride = 0;
    std::vector<double> deltas{0.017, 0.025, 0.05, 0.1};
    double camp_T = 30.0;
    bool spectral = false, sigma_unknown = false;
    auto* camp = app.add_subcommand("campaign", "Monte Carlo RMSE / coverage study");
    add_globals(camp);
    camp->add_option("--scenario", scenario, "linear or meinhardt");
    camp->add_option("--policy", policy, "fixed, scaled or both");
    camp->add_option("--fixed-M", fixed_M, "M for the fixed policy")->check(CLI::PositiveNumber);
    camp->add_option("--deltas", deltas, "resolutions as fractions of L")->delimiter(',');
    camp->add_option("--replicates", camp_reps, "Monte Carlo replicates")->check(CLI::PositiveNumber);
    camp->add_option("--T", camp_T, "time horizon");
    camp->add_option("--time-stride", time_stride, "measure every k-th step (default 1; 100 with --paper-scale)");
    camp->add_option("--laplacian", camp_mode, "analytic or grid");
    camp->add_flag("--spectral", spectral, "also run the spectral estimator");
    camp->add_flag("--sigma-unknown", sigma_unknown, "data-driven interval from realized variation");

    std::string kind = "heatmap", input, output, title;
    auto* plt = app.add_subcommand("plot", "CSV -> SVG (heatmap, boxplot, loglog)");
    add_globals(plt);
    plt->add_option("--kind", kind, "heatmap, boxplot or loglog");
    plt->add_option("--input", input, "input CSV");
    plt->add_option("--output", output, "output SVG (default <out>/<kind>.svg)");
    plt->add_option("--title", title, "plot title");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (*sim) return cmd_simulate(g, args);
        if (*meas) return cmd_measure(g, args, traj_dir, delta, M, stride, mode, matrix_csv);
        if (*est) return cmd_estimate(g, args, ms_path, csv_path, alpha, sigma_A, L, frame_dt, header);
        if (*rep) return cmd_repol(g, args, sigmas, replicates, gamma, repol_T, stop_early);
        if (*camp) {
            return cmd_campaign(g, args, scenario, policy, fixed_M, deltas, camp_reps, camp_T, spectral, sigma_unknown,
                                camp_mode, time_stride);
        }
        if (*plt) return cmd_plot(g, kind, input, output, title);
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const DataError& e) {
        std::cerr << "data error: " << e.what() << '\n';
        return 2;
    } catch (const NumericError& e) {
        std::cerr << "numeric failure: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 1;
}
