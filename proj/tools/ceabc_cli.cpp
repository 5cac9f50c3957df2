// Command-line front end for the epidemic calibration pipeline.
//
// Subcommands: simulate, infer-ic, calibrate, predict, gen-synthetic.
// Exit codes: 0 ok, 2 config error, 3 data error, 4 no accepted samples.

#include <CLI11.hpp>
#include <filesystem>
#include <iostream>
#include <json.hpp>
#include <map>
#include <optional>
#include <string>

#include "ceabc/abc.hpp"
#include "ceabc/ce.hpp"
#include "ceabc/config.hpp"
#include "ceabc/data.hpp"
#include "ceabc/errors.hpp"
#include "ceabc/ic.hpp"
#include "ceabc/integrate.hpp"
#include "ceabc/parallel.hpp"
#include "ceabc/report.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitData = 3;
constexpr int kExitNoAccepted = 4;

struct CliArgs {
    std::optional<std::string> config;
    std::optional<std::string> data;
    std::string out = ".";
    std::optional<std::uint64_t> seed;
    std::optional<unsigned> threads;
    std::optional<double> omega;
    std::optional<double> tol;
    std::optional<double> horizon;
};

void add_common_flags(CLI::App* cmd, CliArgs& args, bool with_data) {
    cmd->add_option("--config", args.config, "Run configuration file (key = value lines)");
    if (with_data)
        cmd->add_option("--data", args.data, "Surveillance CSV (date,hospitalized,new_deaths,total_deaths)");
    cmd->add_option("--out", args.out, "Output directory (or file for gen-synthetic)");
    cmd->add_option("--seed", args.seed, "Root RNG seed");
    cmd->add_option("--threads", args.threads, "Worker threads for forward evaluations (0 = auto)");
    cmd->add_option("--omega", args.omega, "Hospitalization weight in the misfit, in [0,1]");
    cmd->add_option("--tol", args.tol, "ABC acceptance tolerance");
}

ceabc::RunConfig resolve_config(const CliArgs& args) {
    std::map<std::string, std::string> overrides;
    ceabc::RunConfig cfg = ceabc::load_run_config(
        args.config ? std::optional<fs::path>(*args.config) : std::nullopt, overrides);
    // CLI flags override file values.
    if (args.seed) cfg.seed = *args.seed;
    if (args.threads) cfg.threads = *args.threads;
    if (args.omega) {
        if (*args.omega < 0.0 || *args.omega > 1.0)
            throw ceabc::ConfigError("--omega must lie in [0,1]");
        cfg.omega = *args.omega;
    }
    if (args.tol) {
        if (!(*args.tol > 0.0)) throw ceabc::ConfigError("--tol must be positive");
        cfg.abc.tol = *args.tol;
    }
    cfg.ce.threads = cfg.effective_threads();
    cfg.abc.threads = cfg.effective_threads();
    return cfg;
}

json param_json(const ceabc::ParamVector& x) {
    json j;
    for (std::size_t i = 0; i < ceabc::kNumParams; ++i)
        j[std::string(ceabc::kParamNames[i])] = x[i];
    return j;
}

json state_json(const ceabc::StateVector& u) {
    json j;
    for (std::size_t i = 0; i < ceabc::kNumCompartments; ++i)
        j[ceabc::kCompartmentNames[i]] = u[i];
    return j;
}

// Resolved-configuration echo embedded in every report (audit trail). The
// thread count is omitted: it never affects results, and reports must be
// byte-identical across thread counts.
json config_json(const ceabc::RunConfig& cfg) {
    json j;
    j["omega"] = cfg.omega;
    if (cfg.seed) j["seed"] = *cfg.seed;
    j["grid.substeps"] = cfg.substeps;
    j["envelope.level"] = cfg.envelope_level;
    j["report.bins"] = cfg.report_bins;
    j["ce"] = {{"n_samples", cfg.ce.n_samples},
               {"elite_fraction", cfg.ce.elite_fraction},
               {"smoothing_a", cfg.ce.smoothing_a},
               {"smoothing_b", cfg.ce.smoothing_b},
               {"smoothing_q", cfg.ce.smoothing_q},
               {"max_iter", cfg.ce.max_iter},
               {"atol", cfg.ce.tol.atol},
               {"rtol", cfg.ce.tol.rtol}};
    j["abc"] = {{"n_samples", cfg.abc.n_samples}, {"tol", cfg.abc.tol}};
    j["virgin"] = {{"n0", cfg.virgin.n0}, {"e0", cfg.virgin.e0}, {"horizon", cfg.virgin.horizon}};
    if (cfg.ic_h_ref) j["ic.h_ref"] = *cfg.ic_h_ref;
    if (cfg.ic_d_ref) j["ic.d_ref"] = *cfg.ic_d_ref;
    j["nominal"] = param_json(cfg.nominal);
    json lower, upper;
    for (std::size_t i = 0; i < ceabc::kNumParams; ++i) {
        lower[std::string(ceabc::kParamNames[i])] = cfg.bounds.lower[i];
        upper[std::string(ceabc::kParamNames[i])] = cfg.bounds.upper[i];
    }
    j["bounds"] = {{"lower", lower}, {"upper", upper}};
    return j;
}

void write_json(const fs::path& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw ceabc::Error("cannot write '" + path.string() + "'");
    out << j.dump(2) << '\n';
}

ceabc::SurveillanceDataset load_windowed(const ceabc::RunConfig& cfg,
                                         const std::string& path) {
    ceabc::SurveillanceDataset ds =
        ceabc::load_surveillance_csv(path, cfg.data_reconcile_tol);
    if (cfg.window_start || cfg.window_end) {
        const ceabc::Date start = cfg.window_start ? *cfg.window_start : ds.dates.front();
        const ceabc::Date end = cfg.window_end ? *cfg.window_end : ds.dates.back();
        ds = ceabc::window(ds, start, end);
    }
    return ds;
}

// Reference values for the initial-condition inference: explicit config
// values when present, otherwise the first observed data row.
ceabc::StateVector calibration_ic(const ceabc::RunConfig& cfg,
                                  const ceabc::SurveillanceDataset& ds) {
    const double h_ref = cfg.ic_h_ref ? *cfg.ic_h_ref : ds.hospitalized.front();
    const double d_ref = cfg.ic_d_ref ? *cfg.ic_d_ref : ds.total_deaths.front();
    return ceabc::infer_initial_condition(cfg.virgin, h_ref, d_ref, cfg.omega,
                                          cfg.substeps);
}

struct CalibrationOutput {
    ceabc::StateVector ic;
    ceabc::CEResult ce;
    ceabc::ABCResult abc;
    ceabc::QoITarget target;
    std::vector<double> times;
};

CalibrationOutput run_calibration(const ceabc::RunConfig& cfg,
                                  const ceabc::SurveillanceDataset& ds) {
    CalibrationOutput out;
    out.ic = calibration_ic(cfg, ds);
    out.target = ceabc::to_target(ds, cfg.omega);

    // Calibration restarts time at the window start; one output instant per
    // data row.
    const double t_end = static_cast<double>(ds.size() - 1);
    const ceabc::TimeGrid grid{0.0, t_end, 1.0, cfg.substeps};
    out.times.resize(ds.size());
    for (std::size_t k = 0; k < ds.size(); ++k) out.times[k] = static_cast<double>(k);

    const ceabc::StateVector ic = out.ic;
    ceabc::ForwardFn forward = [ic, grid](const ceabc::ParamVector& x) {
        const ceabc::QoISeries q = ceabc::extract_qoi(ceabc::integrate(ic, x, grid));
        return ceabc::ModelSeries{q.hospitalized, q.total_deaths};
    };

    // Independent streams for the two stages, derived from the root seed.
    std::uint64_t seed_state = *cfg.seed;
    const ceabc::RngSeed ce_seed{ceabc::splitmix64(seed_state)};
    const ceabc::RngSeed abc_seed{ceabc::splitmix64(seed_state)};

    out.ce = ceabc::ce_optimize(forward, out.target, cfg.bounds, cfg.ce, ce_seed);
    out.abc = ceabc::abc_infer(out.ce.final_dist, forward, out.target, cfg.abc, abc_seed);
    return out;
}

json calibration_json(const ceabc::RunConfig& cfg, const CalibrationOutput& run,
                      const std::string& data_path,
                      const ceabc::SurveillanceDataset& ds) {
    json j;
    j["config"] = config_json(cfg);
    j["data"] = {{"path", data_path},
                 {"rows", ds.size()},
                 {"start", ds.dates.front().iso()},
                 {"end", ds.dates.back().iso()}};
    j["initial_condition"] = state_json(run.ic);
    j["ce"] = {{"iterations", run.ce.iterations_run},
               {"converged", run.ce.converged},
               {"j_opt", run.ce.j_opt},
               {"x_opt", param_json(run.ce.x_opt)}};
    json abc;
    abc["n_evaluated"] = run.abc.n_evaluated;
    abc["n_accepted"] = run.abc.accepted.size();
    abc["acceptance_rate"] = run.abc.acceptance_rate;
    if (!run.abc.empty()) {
        abc["best_j"] = run.abc.best().j;
        abc["best_x"] = param_json(run.abc.best().x);
        const ceabc::PosteriorSummary summary =
            ceabc::summarize(run.abc, cfg.bounds, cfg.report_bins);
        json posterior = json::array();
        for (const auto& p : summary.params)
            posterior.push_back({{"name", p.name},
                                 {"mean", p.mean},
                                 {"stddev", p.stddev},
                                 {"min", p.min},
                                 {"max", p.max}});
        abc["posterior"] = posterior;
    }
    j["abc"] = abc;
    return j;
}

void write_calibration_outputs(const ceabc::RunConfig& cfg, const CalibrationOutput& run,
                               const fs::path& out_dir) {
    ceabc::write_initial_condition_csv(out_dir / "initial_condition.csv", run.ic);
    ceabc::write_ce_history_csv(out_dir / "ce_history.csv", run.ce);
    ceabc::write_accepted_samples_csv(out_dir / "accepted_samples.csv", run.abc);
    if (!run.abc.empty()) {
        const auto envelopes = ceabc::credible_envelope(run.abc, cfg.envelope_level);
        ceabc::write_envelope_csv(out_dir / "envelope_hospitalized.csv", run.times,
                                  envelopes[0]);
        ceabc::write_envelope_csv(out_dir / "envelope_total_deaths.csv", run.times,
                                  envelopes[1]);
        const ceabc::PosteriorSummary summary =
            ceabc::summarize(run.abc, cfg.bounds, cfg.report_bins);
        ceabc::write_histogram_csv(out_dir / "histograms.csv", summary);
    }
}

int cmd_simulate(const CliArgs& args) {
    const ceabc::RunConfig cfg = resolve_config(args);
    const fs::path out_dir(args.out);
    fs::create_directories(out_dir);

    const ceabc::Trajectory traj = ceabc::virgin_run(cfg.virgin, cfg.substeps);
    ceabc::write_trajectory_csv(out_dir / "trajectory.csv", traj);
    ceabc::write_admissions_csv(out_dir / "admissions.csv", traj);

    json j;
    j["config"] = config_json(cfg);
    const ceabc::QoISeries q = ceabc::extract_qoi(traj);
    std::size_t peak_day = 0;
    double peak_active = 0.0, peak_h = 0.0;
    for (std::size_t k = 0; k < traj.size(); ++k) {
        const ceabc::StateVector& u = traj.states[k];
        const double active = u.e() + u.i() + u.a();
        if (active > peak_active) {
            peak_active = active;
            peak_day = k;
        }
        peak_h = std::max(peak_h, u.h());
    }
    j["summary"] = {{"peak_active_day", peak_day},
                    {"peak_active", peak_active},
                    {"peak_hospitalized", peak_h},
                    {"final_deaths", q.total_deaths.back()},
                    {"cumulative_admissions", traj.admissions.back()}};
    write_json(out_dir / "summary.json", j);
    std::cout << "simulate: " << traj.size() << " instants -> " << out_dir.string()
              << "\n";
    return kExitOk;
}

int cmd_infer_ic(const CliArgs& args) {
    const ceabc::RunConfig cfg = resolve_config(args);
    if (!cfg.ic_h_ref || !cfg.ic_d_ref)
        throw ceabc::ConfigError("infer-ic: ic.h_ref and ic.d_ref must be configured");
    const fs::path out_dir(args.out);
    fs::create_directories(out_dir);

    const ceabc::StateVector ic = ceabc::infer_initial_condition(
        cfg.virgin, *cfg.ic_h_ref, *cfg.ic_d_ref, cfg.omega, cfg.substeps);
    ceabc::write_initial_condition_csv(out_dir / "initial_condition.csv", ic);

    json j;
    j["config"] = config_json(cfg);
    j["initial_condition"] = state_json(ic);
    write_json(out_dir / "summary.json", j);
    std::cout << "infer-ic: H_ref=" << *cfg.ic_h_ref << " D_ref=" << *cfg.ic_d_ref
              << " -> " << (out_dir / "initial_condition.csv").string() << "\n";
    return kExitOk;
}

int cmd_calibrate(const CliArgs& args) {
    const ceabc::RunConfig cfg = resolve_config(args);
    if (!cfg.seed) throw ceabc::ConfigError("calibrate: --seed is mandatory");
    if (!args.data) throw ceabc::ConfigError("calibrate: --data is mandatory");
    const fs::path out_dir(args.out);
    fs::create_directories(out_dir);

    const ceabc::SurveillanceDataset ds = load_windowed(cfg, *args.data);
    const CalibrationOutput run = run_calibration(cfg, ds);
    write_calibration_outputs(cfg, run, out_dir);
    write_json(out_dir / "summary.json", calibration_json(cfg, run, *args.data, ds));

    if (run.abc.empty()) {
        std::cerr << "calibrate: no accepted samples at tol=" << cfg.abc.tol
                  << "; consider raising --tol\n";
        return kExitNoAccepted;
    }
    std::cout << "calibrate: j_opt=" << run.ce.j_opt
              << " acceptance_rate=" << run.abc.acceptance_rate << " -> "
              << out_dir.string() << "\n";
    return kExitOk;
}

int cmd_predict(const CliArgs& args) {
    ceabc::RunConfig cfg = resolve_config(args);
    if (!cfg.seed) throw ceabc::ConfigError("predict: --seed is mandatory");
    if (!args.data) throw ceabc::ConfigError("predict: --data is mandatory");
    if (args.horizon) {
        if (*args.horizon < 0.0) throw ceabc::ConfigError("--horizon must be nonnegative");
        cfg.predict_horizon = *args.horizon;
    }
    const fs::path out_dir(args.out);
    fs::create_directories(out_dir);

    const ceabc::SurveillanceDataset ds = load_windowed(cfg, *args.data);
    CalibrationOutput run = run_calibration(cfg, ds);
    write_calibration_outputs(cfg, run, out_dir);

    json j = calibration_json(cfg, run, *args.data, ds);
    if (run.abc.empty()) {
        write_json(out_dir / "summary.json", j);
        std::cerr << "predict: no accepted samples at tol=" << cfg.abc.tol << "\n";
        return kExitNoAccepted;
    }

    // Re-run every accepted sample over the extended horizon; the accepted
    // set itself is untouched.
    const double t_end = static_cast<double>(ds.size() - 1) + cfg.predict_horizon;
    const ceabc::TimeGrid grid{0.0, t_end, 1.0, cfg.substeps};
    const ceabc::StateVector ic = run.ic;
    std::vector<ceabc::ModelSeries> extended(run.abc.accepted.size());
    ceabc::parallel_for(run.abc.accepted.size(), cfg.effective_threads(), [&](std::size_t k) {
        const ceabc::QoISeries q = ceabc::extract_qoi(
            ceabc::integrate(ic, run.abc.accepted[k].x, grid));
        extended[k] = {q.hospitalized, q.total_deaths};
    });
    ceabc::ABCResult forecast = run.abc;
    for (std::size_t k = 0; k < forecast.accepted.size(); ++k)
        forecast.accepted[k].qoi = extended[k];

    std::vector<double> times(grid.n_outputs());
    for (std::size_t k = 0; k < times.size(); ++k) times[k] = static_cast<double>(k);
    const auto envelopes = ceabc::credible_envelope(forecast, cfg.envelope_level);
    ceabc::write_envelope_csv(out_dir / "forecast_hospitalized.csv", times, envelopes[0]);
    ceabc::write_envelope_csv(out_dir / "forecast_total_deaths.csv", times, envelopes[1]);

    j["predict"] = {{"horizon", cfg.predict_horizon},
                    {"n_samples", forecast.accepted.size()}};
    write_json(out_dir / "summary.json", j);
    std::cout << "predict: horizon=" << cfg.predict_horizon << " over "
              << forecast.accepted.size() << " samples -> " << out_dir.string() << "\n";
    return kExitOk;
}

int cmd_gen_synthetic(const CliArgs& args) {
    const ceabc::RunConfig cfg = resolve_config(args);
    const fs::path out_path(args.out);
    if (out_path.has_parent_path()) fs::create_directories(out_path.parent_path());

    // Twin scenario: dynamically consistent start when references are
    // configured, otherwise the virgin initial state.
    ceabc::StateVector ic;
    if (cfg.ic_h_ref && cfg.ic_d_ref)
        ic = ceabc::infer_initial_condition(cfg.virgin, *cfg.ic_h_ref, *cfg.ic_d_ref,
                                            cfg.omega, cfg.substeps);
    else
        ic = cfg.virgin.initial_state();

    const ceabc::TimeGrid grid{0.0, cfg.synthetic_days, 1.0, cfg.substeps};
    const ceabc::Trajectory traj = ceabc::integrate(ic, cfg.nominal, grid);
    const std::uint64_t noise_seed = cfg.seed ? *cfg.seed : 0;
    const ceabc::SurveillanceDataset ds =
        ceabc::synthesize_dataset(traj, cfg.synthetic_start, cfg.synthetic_noise, noise_seed);
    ceabc::write_surveillance_csv(out_path, ds);
    std::cout << "gen-synthetic: " << ds.size() << " rows -> " << out_path.string()
              << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Epidemic model calibration: cross-entropy optimization with "
                 "approximate Bayesian computation"};
    app.require_subcommand(1);

    CliArgs args;
    CLI::App* simulate = app.add_subcommand("simulate", "Run the outbreak scenario");
    add_common_flags(simulate, args, false);
    CLI::App* infer_ic =
        app.add_subcommand("infer-ic", "Infer a dynamically consistent initial condition");
    add_common_flags(infer_ic, args, false);
    CLI::App* calibrate =
        app.add_subcommand("calibrate", "Calibrate parameters against surveillance data");
    add_common_flags(calibrate, args, true);
    CLI::App* predict =
        app.add_subcommand("predict", "Calibrate, then forecast beyond the window");
    add_common_flags(predict, args, true);
    predict->add_option("--horizon", args.horizon, "Forecast horizon in days");
    CLI::App* gen =
        app.add_subcommand("gen-synthetic", "Generate synthetic surveillance data");
    add_common_flags(gen, args, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (simulate->parsed()) return cmd_simulate(args);
        if (infer_ic->parsed()) return cmd_infer_ic(args);
        if (calibrate->parsed()) return cmd_calibrate(args);
        if (predict->parsed()) return cmd_predict(args);
        if (gen->parsed()) return cmd_gen_synthetic(args);
        throw ceabc::ConfigError("no subcommand selected");
    } catch (const ceabc::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const ceabc::DataError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    } catch (const ceabc::NoAcceptedSamples& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNoAccepted;
    } catch (const ceabc::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
