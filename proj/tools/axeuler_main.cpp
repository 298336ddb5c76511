// Command-line entry points: run | sweep | decay | converge | verify.
// Exit codes: 0 success, 2 acceptance failure, 1 error.

#include "axeuler/config.hpp"
#include "axeuler/experiments.hpp"
#include "axeuler/io.hpp"
#include "axeuler/kernels.hpp"
#include "axeuler/verify.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>

namespace fs = std::filesystem;
using namespace axeuler;

namespace {

constexpr const char* kVersion = "0.1.0";

std::string slurp(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file " + path.string());
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

struct CommonArgs {
    std::string config_path;
    std::string out_dir;
    int jobs = 0;
    int resolution = 0;
    bool quiet = false;
};

SimConfig load_config(const CommonArgs& args, const std::string& study) {
    SimConfig cfg = args.config_path.empty() ? SimConfig{} : parse_config(slurp(args.config_path));
    cfg.study = study;
    if (!args.out_dir.empty()) cfg.out_dir = args.out_dir;
    if (args.jobs > 0) cfg.jobs = args.jobs;
    if (args.resolution > 0) cfg.scenario.n = static_cast<std::size_t>(args.resolution);
    if (args.quiet) cfg.quiet = true;
    validate_config(cfg);
    return cfg;
}

std::vector<std::pair<std::string, std::string>> manifest_base(const SimConfig& cfg,
                                                               const std::string& run_id) {
    std::vector<std::pair<std::string, std::string>> kv;
    kv.emplace_back("run_id", run_id);
    kv.emplace_back("version", kVersion);
    kv.emplace_back("kernels", kernels::backend_name(kernels::active_backend()));
    std::istringstream cfg_lines(serialize_config(cfg));
    std::string line;
    while (std::getline(cfg_lines, line)) {
        const auto eq = line.find(" = ");
        kv.emplace_back(line.substr(0, eq), line.substr(eq + 3));
    }
    return kv;
}

int cmd_run(const CommonArgs& args) {
    SimConfig cfg = load_config(args, "run");
    const std::string run_id = config_run_id(cfg);
    const fs::path dir = fs::path(cfg.out_dir) / ("run_" + run_id);
    fs::create_directories(dir);

    GridPtr grid = scenario_grid(cfg.scenario);
    auto [state, rho0] = make_initial_data(cfg.scenario, grid);
    const double data_eps = data_size_epsilon(state, rho0, cfg.K);

    RunParams params = run_params_for(cfg.scenario);
    params.thresholds.theta = cfg.theta;
    params.thresholds.dt_floor_factor = cfg.dt_floor_factor;
    params.K = cfg.K;
    params.snapshot_times = cfg.snapshot_times;
    params.on_snapshot = [&](const FieldState& s, std::size_t idx) {
        write_snapshot(dir / snapshot_file_name(run_id, idx), s, cfg.scenario.eos);
    };

    const auto t0 = std::chrono::steady_clock::now();
    RunOutcome out = run(state, cfg.scenario.eos, params);
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    write_ledger_csv(dir / "ledger.csv", out.ledger);
    auto kv = manifest_base(cfg, run_id);
    kv.emplace_back("data_size_epsilon", format_sci17(data_eps));
    kv.emplace_back("outcome", run_status_name(out.status));
    kv.emplace_back("t_end_reached", format_sci17(out.t_end_reached));
    if (out.blowup_time) kv.emplace_back("blowup_time", format_sci17(*out.blowup_time));
    if (!out.message.empty()) kv.emplace_back("message", out.message);
    kv.emplace_back("steps", std::to_string(out.steps));
    kv.emplace_back("wall_seconds", format_sci17(wall));
    write_manifest(dir / "manifest.txt", kv);

    if (!cfg.quiet) {
        std::cout << "run " << run_id << ": " << run_status_name(out.status) << " at t="
                  << out.t_end_reached << " (" << out.steps << " steps, " << wall << " s)\n"
                  << "outputs in " << dir.string() << "\n";
    }
    return out.status == RunStatus::Aborted ? 1 : 0;
}

int cmd_sweep(const CommonArgs& args) {
    SimConfig cfg = load_config(args, "sweep");
    const std::string run_id = config_run_id(cfg);
    const fs::path dir = fs::path(cfg.out_dir) / ("sweep_" + run_id);
    fs::create_directories(dir);

    SweepOptions opt;
    opt.horizon_scale = cfg.horizon_scale;
    opt.max_retries = cfg.max_retries;
    opt.jobs = cfg.jobs;
    opt.theta = cfg.theta;

    const auto t0 = std::chrono::steady_clock::now();
    SweepResult res = lifespan_sweep(cfg.scenario.eos, cfg.epsilons, cfg.scenario, opt);
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    {
        std::ofstream csv(dir / "sweep.csv");
        csv << "epsilon,T,n,theta,r_max,retries,eps2T\n";
        for (const SweepRow& row : res.rows) {
            csv << format_sci17(row.epsilon) << "," << format_sci17(row.T) << "," << row.n << ","
                << format_sci17(row.theta) << "," << format_sci17(row.r_max) << "," << row.retries
                << "," << format_sci17(row.epsilon * row.epsilon * row.T) << "\n";
        }
    }
    const bool accept = res.slope >= -2.2 && res.slope <= -1.8;
    auto kv = manifest_base(cfg, run_id);
    kv.emplace_back("slope", format_sci17(res.slope));
    kv.emplace_back("r_squared", format_sci17(res.r_squared));
    kv.emplace_back("tau0_sq", format_sci17(res.tau0_sq));
    kv.emplace_back("accept_slope_in_[-2.2,-1.8]", accept ? "true" : "false");
    kv.emplace_back("wall_seconds", format_sci17(wall));
    write_manifest(dir / "manifest.txt", kv);

    if (!cfg.quiet) {
        std::cout << "sweep " << run_id << ": slope=" << res.slope << " tau0^2=" << res.tau0_sq
                  << " (r^2=" << res.r_squared << ", " << wall << " s)\n"
                  << "outputs in " << dir.string() << "\n";
    }
    return accept ? 0 : 2;
}

int cmd_decay(const CommonArgs& args) {
    SimConfig cfg = load_config(args, "decay");
    const std::string run_id = config_run_id(cfg);
    const fs::path dir = fs::path(cfg.out_dir) / ("decay_" + run_id);
    fs::create_directories(dir);

    const auto t0 = std::chrono::steady_clock::now();
    DecayReport rep = decay_study(cfg.scenario, cfg.window_lo, cfg.window_hi);
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    write_ledger_csv(dir / "ledger.csv", rep.ledger);
    {
        std::ofstream csv(dir / "fits.csv");
        csv << "probe,exponent,r_squared,n_used,n_excluded\n";
        for (const auto& [name, fit] : rep.fits) {
            csv << name << "," << format_sci17(fit.exponent) << "," << format_sci17(fit.r_squared)
                << "," << fit.n_used << "," << fit.n_excluded << "\n";
        }
    }
    bool accept = rep.status == RunStatus::Completed;
    std::string why;
    if (rep.fits.count("near_drvf")) {
        const double e = rep.fits.at("near_drvf").exponent;
        if (e < -1.8 || e > -1.2) {
            accept = false;
            why += "near_drvf exponent " + std::to_string(e) + " outside [-1.8,-1.2]; ";
        }
    }
    if (rep.fits.count("away_dtvv")) {
        const double e = rep.fits.at("away_dtvv").exponent;
        if (e > -1.6) {
            accept = false;
            why += "away_dtvv exponent " + std::to_string(e) + " > -1.6; ";
        }
    }
    auto kv = manifest_base(cfg, run_id);
    kv.emplace_back("outcome", run_status_name(rep.status));
    kv.emplace_back("window_lo", format_sci17(rep.window_lo));
    kv.emplace_back("window_hi", format_sci17(rep.window_hi));
    for (const auto& [name, fit] : rep.fits) {
        kv.emplace_back("exponent_" + name, format_sci17(fit.exponent));
    }
    kv.emplace_back("accept", accept ? "true" : "false");
    if (!why.empty()) kv.emplace_back("accept_detail", why);
    kv.emplace_back("wall_seconds", format_sci17(wall));
    write_manifest(dir / "manifest.txt", kv);

    if (!cfg.quiet) {
        std::cout << "decay " << run_id << ": " << run_status_name(rep.status) << "\n";
        for (const auto& [name, fit] : rep.fits) {
            std::cout << "  " << name << ": exponent " << fit.exponent << " (r^2 "
                      << fit.r_squared << ")\n";
        }
        std::cout << "outputs in " << dir.string() << "\n";
    }
    return accept ? 0 : 2;
}

int cmd_converge(const CommonArgs& args) {
    SimConfig cfg = load_config(args, "converge");
    const std::string run_id = config_run_id(cfg);
    const fs::path dir = fs::path(cfg.out_dir) / ("converge_" + run_id);
    fs::create_directories(dir);

    const std::size_t n_base = cfg.n_base ? cfg.n_base : cfg.scenario.n;
    const auto t0 = std::chrono::steady_clock::now();
    ConvergenceResult res = convergence_study(cfg.scenario, n_base);
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    {
        std::ofstream csv(dir / "orders.csv");
        csv << "field,order_L2,order_Linf\n";
        for (const auto& [name, o] : res.orders) {
            csv << name << "," << format_sci17(o.first) << "," << format_sci17(o.second) << "\n";
        }
    }
    const bool accept = res.exact || res.min_order >= 3.5;
    auto kv = manifest_base(cfg, run_id);
    kv.emplace_back("n_base", std::to_string(n_base));
    kv.emplace_back("min_order", format_sci17(res.min_order));
    kv.emplace_back("exact", res.exact ? "true" : "false");
    kv.emplace_back("accept_order_ge_3.5", accept ? "true" : "false");
    kv.emplace_back("wall_seconds", format_sci17(wall));
    write_manifest(dir / "manifest.txt", kv);

    if (!cfg.quiet) {
        std::cout << "converge " << run_id << ": min order " << res.min_order
                  << (res.exact ? " (exact)" : "") << "\n"
                  << "outputs in " << dir.string() << "\n";
    }
    return accept ? 0 : 2;
}

int cmd_verify(const CommonArgs& args) {
    SimConfig cfg = load_config(args, "verify");
    const auto checks = run_verify_suite();
    bool all = true;
    for (const VerifyCheck& c : checks) {
        all = all && c.passed;
        if (!cfg.quiet || !c.passed) {
            std::cout << (c.passed ? "[PASS] " : "[FAIL] ") << c.name;
            if (!c.detail.empty()) std::cout << " (" << c.detail << ")";
            std::cout << "\n";
        }
    }
    std::cout << (all ? "verify: all checks passed\n" : "verify: FAILURES\n");
    return all ? 0 : 2;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"radial compressible-Euler simulator and diagnostics workbench"};
    app.require_subcommand(1);

    CommonArgs args;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", args.config_path, "path to a key = value config file");
        sub->add_option("--out", args.out_dir, "output directory");
        sub->add_option("--jobs", args.jobs, "parallel runs for sweeps");
        sub->add_option("--resolution", args.resolution, "override grid n");
        sub->add_flag("--quiet", args.quiet, "suppress normal output");
    };

    CLI::App* run_cmd = app.add_subcommand("run", "integrate one trajectory");
    CLI::App* sweep_cmd = app.add_subcommand("sweep", "lifespan scaling sweep");
    CLI::App* decay_cmd = app.add_subcommand("decay", "decay-rate study");
    CLI::App* conv_cmd = app.add_subcommand("converge", "self-convergence study");
    CLI::App* verify_cmd = app.add_subcommand("verify", "fast invariant suite");
    for (CLI::App* sub : {run_cmd, sweep_cmd, decay_cmd, conv_cmd, verify_cmd}) add_common(sub);

    CLI11_PARSE(app, argc, argv);

    try {
        if (run_cmd->parsed()) return cmd_run(args);
        if (sweep_cmd->parsed()) return cmd_sweep(args);
        if (decay_cmd->parsed()) return cmd_decay(args);
        if (conv_cmd->parsed()) return cmd_converge(args);
        if (verify_cmd->parsed()) return cmd_verify(args);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
