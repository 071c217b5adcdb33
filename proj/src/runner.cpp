#include "soretsim/runner.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <random>
#include <vector>

#include <json.hpp>

#include "soretsim/experiments.hpp"
#include "soretsim/oracle.hpp"
#include "soretsim/thermo.hpp"

namespace soretsim {
namespace runner {

namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::ofstream open_out(const fs::path& path) {
    std::ofstream out(path);
    if (!out)
        raise(ErrorCode::Io, "cannot write " + path.string());
    return out;
}

void write_row(std::ofstream& out, const std::vector<double>& row) {
    for (size_t i = 0; i < row.size(); ++i)
        out << fmt(row[i]) << (i + 1 < row.size() ? "," : "\n");
}

fs::path snapshot_path(const fs::path& dir, long step) {
    char name[32];
    std::snprintf(name, sizeof name, "step_%08ld.csv", step);
    return dir / name;
}

struct RunContext {
    fs::path out_dir;
    std::vector<std::string> files; // manifest inventory, relative paths
    nlohmann::ordered_json extra;   // mode-specific manifest entries

    void record(const fs::path& path) { files.push_back(fs::relative(path, out_dir).string()); }
};

// ---------------------------------------------------------------------------

void run_discrete(const RunConfig& config, RunContext& ctx) {
    const LatticeSpec spec =
        LatticeSpec::create(config.sites, config.spacing, config.epsilon, config.lambda,
                            config.potential.materialize(config.sites, config.spacing));
    ctx.extra["max_quantization_error"] = spec.max_quantization_error;
    ctx.extra["k_max"] = spec.k_max;

    const std::vector<double> occupation = config.density.materialize(config.sites);
    const std::vector<double> theta = config.temperature.materialize(config.sites);
    MeanFieldState state;
    state.n = occupation;
    state.kinetic.resize(config.sites);
    for (int i = 0; i < config.sites; ++i) {
        if (!(occupation[i] >= 0.0) || occupation[i] > 1.0)
            raise(ErrorCode::ConfigInvalid, "initial occupation outside [0,1]");
        if (!(theta[i] > 0.0))
            raise(ErrorCode::ConfigInvalid, "initial temperature must be positive");
        state.kinetic[i] = kinetic_from_theta(occupation[i], theta[i], config.epsilon);
    }
    state.validate(spec);

    const fs::path snap_dir = ctx.out_dir / "snapshots";
    fs::create_directories(snap_dir);
    const auto write_snapshot = [&](long step) {
        const fs::path path = snapshot_path(snap_dir, step);
        std::ofstream out = open_out(path);
        out << "x,n,K,Theta,V\n";
        for (int i = 0; i < spec.num_sites; ++i) {
            double th = 0.0;
            if (state.n[i] > 0.0 && state.kinetic[i] > 0.0)
                th = closure_from_means(state.n[i], state.kinetic[i], spec.energy_quantum)
                         .theta;
            write_row(out, {(i + 0.5) * spec.spacing, state.n[i], state.kinetic[i], th,
                            spec.potential[i]});
        }
        ctx.record(path);
    };

    const Totals initial = totals(state, spec);
    double entropy = thermo::entropy_discrete(state, spec);
    write_snapshot(0);
    const StepOptions options{config.sum_mode, -1, false};
    for (long step = 1; step <= config.steps; ++step) {
        state = step_mean_field(state, spec, options).state;
        const Totals now = totals(state, spec);
        if (std::abs(now.particles - initial.particles) >
            config.conservation_rel * std::max(1.0, std::abs(initial.particles)))
            raise(ErrorCode::ConservationViolated,
                  "particle number drifted at step " + std::to_string(step));
        if (std::abs(now.energy - initial.energy) >
            config.conservation_rel * std::max(1.0, std::abs(initial.energy)))
            raise(ErrorCode::ConservationViolated,
                  "total energy drifted at step " + std::to_string(step));
        const double next_entropy = thermo::entropy_discrete(state, spec);
        if (next_entropy < entropy - config.entropy_drop)
            raise(ErrorCode::EntropyDecreased,
                  "entropy decreased at step " + std::to_string(step));
        entropy = next_entropy;
        if (step % config.output_every == 0 || step == config.steps)
            write_snapshot(step);
    }
    ctx.extra["final_entropy"] = entropy;
    ctx.extra["total_particles"] = initial.particles;
    ctx.extra["total_energy"] = initial.energy;
}

// ---------------------------------------------------------------------------

void run_continuum(const RunConfig& config, RunContext& ctx) {
    ContinuumState state = ContinuumState::create(
        config.cells, config.length, config.rho_max,
        config.density.materialize(config.cells), config.temperature.materialize(config.cells),
        config.potential.materialize(config.cells, config.length / config.cells));

    const fs::path snap_dir = ctx.out_dir / "snapshots";
    fs::create_directories(snap_dir);
    const auto write_snapshot = [&](long step) {
        const CurrentSet cur = compute_currents(state, config.lambda);
        const fs::path path = snapshot_path(snap_dir, step);
        std::ofstream out = open_out(path);
        out << "x,rho,Theta,V,j_c,j_gamma,j_e\n";
        for (int i = 0; i < state.cells; ++i) {
            // Face currents reported at the cell's left face.
            write_row(out, {state.cell_center(i), state.rho[i], state.theta[i],
                            state.potential[i], cur.particle[i], cur.heat[i], cur.energy[i]});
        }
        ctx.record(path);
    };

    const double mass0 = total_mass(state);
    const double energy0 = total_energy(state);
    double entropy = thermo::entropy_continuum(state);
    write_snapshot(0);
    for (long step = 1; step <= config.steps; ++step) {
        state = pde_step(state, config.lambda, cfl_dt(state, config.lambda, config.cfl_safety));
        if (std::abs(total_mass(state) - mass0) >
            config.conservation_rel * std::max(1.0, std::abs(mass0)))
            raise(ErrorCode::ConservationViolated,
                  "mass drifted at step " + std::to_string(step));
        if (std::abs(total_energy(state) - energy0) >
            config.conservation_rel * std::max(1.0, std::abs(energy0)))
            raise(ErrorCode::ConservationViolated,
                  "energy drifted at step " + std::to_string(step));
        const double next_entropy = thermo::entropy_continuum(state);
        if (next_entropy < entropy - config.entropy_drop)
            raise(ErrorCode::EntropyDecreased,
                  "entropy decreased at step " + std::to_string(step));
        entropy = next_entropy;
        if (step % config.output_every == 0 || step == config.steps)
            write_snapshot(step);
    }
    // Final-state transport diagnostics; skipped when a cell sits at the
    // domain boundary of the force expressions (rho = 0 or rho = rho_max).
    try {
        const fs::path diag = ctx.out_dir / "diagnostics.csv";
        thermo::write_diagnostics_csv(state, config.lambda, diag.string());
        ctx.record(diag);
    } catch (const Error& e) {
        if (e.code() != ErrorCode::SingularCoord && e.code() != ErrorCode::SingularForce)
            throw;
        ctx.extra["diagnostics_skipped"] = e.what();
    }
    ctx.extra["final_time"] = state.time;
    ctx.extra["final_entropy"] = entropy;
}

// ---------------------------------------------------------------------------

void run_oracle_check(const RunConfig& config, RunContext& ctx) {
    const LatticeSpec spec =
        LatticeSpec::create(config.sites, config.spacing, config.epsilon, config.lambda,
                            config.potential.materialize(config.sites, config.spacing));
    const int k_cap = config.oracle_k_cap >= 0 ? config.oracle_k_cap : spec.k_max;

    std::mt19937 rng(config.oracle_seed);
    std::uniform_real_distribution<double> un(0.05, 0.95);
    std::uniform_real_distribution<double> ub(0.5, 3.0); // eps*beta range

    nlohmann::ordered_json cases = nlohmann::ordered_json::array();
    double worst = 0.0, worst_tail = 0.0;
    for (int trial = 0; trial < config.oracle_states; ++trial) {
        MeanFieldState s;
        s.n.resize(spec.num_sites);
        s.kinetic.resize(spec.num_sites);
        for (int i = 0; i < spec.num_sites; ++i) {
            s.n[i] = un(rng);
            const double theta = spec.energy_quantum / ub(rng);
            s.kinetic[i] = kinetic_from_theta(s.n[i], theta, spec.energy_quantum);
        }
        const oracle::OracleCheck check = oracle::compare_with_mean_field(s, spec, k_cap);
        worst = std::max(worst, check.max_error);
        worst_tail = std::max(worst_tail, check.baseline_kinetic_tail);
        nlohmann::ordered_json row;
        row["case"] = trial;
        row["max_occupation_error"] = check.max_occupation_error;
        row["max_kinetic_update_error"] = check.max_kinetic_update_error;
        row["baseline_kinetic_tail"] = check.baseline_kinetic_tail;
        cases.push_back(row);
    }

    const bool pass = worst <= config.oracle_tolerance;
    nlohmann::ordered_json report;
    report["sites"] = spec.num_sites;
    report["k_cap"] = k_cap;
    report["states"] = config.oracle_states;
    report["tolerance"] = config.oracle_tolerance;
    report["max_error"] = worst;
    report["max_baseline_kinetic_tail"] = worst_tail;
    report["cases"] = cases;
    report["pass"] = pass;
    const fs::path path = ctx.out_dir / "oracle_report.json";
    open_out(path) << report.dump(2) << "\n";
    ctx.record(path);
    if (!pass)
        raise(ErrorCode::OracleMismatch,
              "mean-field step deviates from the exact marginals by " + fmt(worst));
}

// ---------------------------------------------------------------------------

void run_experiment(const RunConfig& config, RunContext& ctx) {
    experiments::ExperimentReport report;
    if (config.experiment_name == "soret") {
        experiments::SoretParams p;
        if (config.experiment_levels > 0)
            p.levels = config.experiment_levels;
        if (config.experiment_base_sites > 0)
            p.base_sites = config.experiment_base_sites;
        report = experiments::soret_measurement(p);
    } else if (config.experiment_name == "dufour") {
        experiments::DufourParams p;
        if (config.experiment_levels > 0)
            p.levels = config.experiment_levels;
        if (config.experiment_base_sites > 0)
            p.base_sites = config.experiment_base_sites;
        report = experiments::dufour_measurement(p);
    } else if (config.experiment_name == "convergence") {
        experiments::ConvergenceParams p;
        if (config.experiment_levels > 0)
            p.levels = config.experiment_levels;
        if (config.experiment_base_sites > 0)
            p.base_sites = config.experiment_base_sites;
        report = experiments::convergence_study(p);
    } else if (config.experiment_name == "drift") {
        experiments::DriftParams p;
        if (config.experiment_base_sites > 0)
            p.sites = config.experiment_base_sites;
        report = experiments::thermal_drift_demo(p);
    } else {
        raise(ErrorCode::ConfigInvalid, "unknown experiment: " + config.experiment_name);
    }

    const fs::path json_path = ctx.out_dir / "report.json";
    open_out(json_path) << report.to_json();
    ctx.record(json_path);
    const fs::path table_path = ctx.out_dir / "report.txt";
    open_out(table_path) << report.to_table();
    ctx.record(table_path);
    if (!report.series.empty()) {
        const fs::path series_path = ctx.out_dir / "series.csv";
        std::ofstream out = open_out(series_path);
        for (size_t i = 0; i < report.series_header.size(); ++i)
            out << report.series_header[i]
                << (i + 1 < report.series_header.size() ? "," : "\n");
        for (const auto& row : report.series)
            write_row(out, row);
        ctx.record(series_path);
    }
    ctx.extra["experiment_runtime_seconds"] = report.runtime_seconds;
    if (!report.pass)
        raise(ErrorCode::ConvergenceFailure,
              "experiment '" + config.experiment_name + "' missed its tolerances");
}

} // namespace

int exit_code_for(ErrorCode code) {
    switch (code) {
    case ErrorCode::ConfigInvalid: return 2;
    case ErrorCode::ConservationViolated: return 3;
    case ErrorCode::EntropyDecreased: return 4;
    case ErrorCode::BoundsViolated: return 5;
    case ErrorCode::InvalidRates: return 6;
    case ErrorCode::OracleMismatch: return 7;
    case ErrorCode::ConvergenceFailure: return 8;
    case ErrorCode::Io: return 9;
    case ErrorCode::UnstableStep: return 10;
    case ErrorCode::StepTooLarge: return 11;
    case ErrorCode::InvalidArgument:
    case ErrorCode::InvalidState:
    case ErrorCode::EmptyOrColdSite: return 12;
    case ErrorCode::TooLarge: return 13;
    case ErrorCode::SingularForce:
    case ErrorCode::SingularCoord: return 14;
    case ErrorCode::Internal: return 15;
    }
    return 15;
}

std::filesystem::path resolve_out_dir(const RunConfig& config,
                                      const std::optional<std::string>& override_dir) {
    fs::path dir = override_dir ? fs::path(*override_dir) : fs::path(config.out_dir);
    if (dir.is_relative()) {
        if (const char* root = std::getenv("SORETSIM_OUT_ROOT"))
            dir = fs::path(root) / dir;
    }
    return dir;
}

RunOutcome run(const RunConfig& config, const std::optional<std::string>& out_dir_override) {
    const auto t0 = Clock::now();
    RunOutcome outcome;
    RunContext ctx;
    ctx.out_dir = resolve_out_dir(config, out_dir_override);
    outcome.out_dir = ctx.out_dir;

    std::error_code ec;
    fs::create_directories(ctx.out_dir, ec);
    if (ec) {
        outcome.exit_code = exit_code_for(ErrorCode::Io);
        outcome.category = ErrorCode::Io;
        outcome.message = "cannot create output directory " + ctx.out_dir.string();
        return outcome;
    }

    const fs::path sentinel = ctx.out_dir / "INCOMPLETE";
    nlohmann::ordered_json manifest;
    manifest["tool"] = "soretsim";
    manifest["mode"] = run_mode_name(config.mode);
    try {
        open_out(sentinel) << "run in progress or aborted\n";
        const fs::path echo_path = ctx.out_dir / "config.canonical.ini";
        open_out(echo_path) << config.canonical_text();
        ctx.record(echo_path);

        switch (config.mode) {
        case RunMode::Discrete: run_discrete(config, ctx); break;
        case RunMode::Continuum: run_continuum(config, ctx); break;
        case RunMode::OracleCheck: run_oracle_check(config, ctx); break;
        case RunMode::Experiment: run_experiment(config, ctx); break;
        }

        manifest["status"] = "ok";
        outcome.exit_code = 0;
        outcome.message = "ok";
    } catch (const Error& e) {
        manifest["status"] = "failed";
        manifest["error_category"] = error_code_name(e.code());
        manifest["error"] = e.what();
        outcome.exit_code = exit_code_for(e.code());
        outcome.category = e.code();
        outcome.message = std::string(error_code_name(e.code())) + ": " + e.what();
    } catch (const std::exception& e) {
        manifest["status"] = "failed";
        manifest["error_category"] = "internal";
        manifest["error"] = e.what();
        outcome.exit_code = exit_code_for(ErrorCode::Internal);
        outcome.category = ErrorCode::Internal;
        outcome.message = std::string("internal: ") + e.what();
    }

    manifest["files"] = ctx.files;
    for (auto& [key, value] : ctx.extra.items())
        manifest[key] = value;
    manifest["runtime_seconds"] = std::chrono::duration<double>(Clock::now() - t0).count();
    try {
        open_out(ctx.out_dir / "manifest.json") << manifest.dump(2) << "\n";
        if (outcome.exit_code == 0)
            fs::remove(sentinel);
    } catch (const std::exception& e) {
        if (outcome.exit_code == 0) {
            outcome.exit_code = exit_code_for(ErrorCode::Io);
            outcome.category = ErrorCode::Io;
            outcome.message = e.what();
        }
    }
    return outcome;
}

RunOutcome run_file(const std::string& config_path,
                    const std::optional<std::string>& out_dir_override,
                    const std::optional<std::string>& mode_override) {
    RunOutcome outcome;
    try {
        RunConfig config = load_config_file(config_path);
        if (mode_override) {
            if (*mode_override == "discrete")
                config.mode = RunMode::Discrete;
            else if (*mode_override == "continuum")
                config.mode = RunMode::Continuum;
            else if (*mode_override == "oracle-check")
                config.mode = RunMode::OracleCheck;
            else if (*mode_override == "experiment")
                config.mode = RunMode::Experiment;
            else
                raise(ErrorCode::ConfigInvalid, "unknown mode override: " + *mode_override);
        }
        return run(config, out_dir_override);
    } catch (const Error& e) {
        outcome.exit_code = exit_code_for(e.code());
        outcome.category = e.code();
        outcome.message = std::string(error_code_name(e.code())) + ": " + e.what();
    } catch (const std::exception& e) {
        outcome.exit_code = exit_code_for(ErrorCode::Internal);
        outcome.category = ErrorCode::Internal;
        outcome.message = std::string("internal: ") + e.what();
    }
    return outcome;
}

} // namespace runner
} // namespace soretsim
