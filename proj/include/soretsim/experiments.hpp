#pragma once

#include <map>
#include <string>
#include <vector>

#include "soretsim/continuum.hpp"
#include "soretsim/lattice.hpp"

namespace soretsim {
namespace experiments {

struct Measurement {
    std::string label;
    double value = 0.0;
    double expected = 0.0;
    double tolerance = 0.0;
    bool relative = true; // tolerance interpreted relative to |expected|
    bool pass = false;
};

struct ExperimentReport {
    std::string name;
    std::vector<std::pair<std::string, double>> parameters; // insertion-ordered
    std::vector<Measurement> measurements;
    bool pass = false;
    double runtime_seconds = 0.0; // run metadata: goes to the manifest, not the report
    std::vector<std::string> series_header;
    std::vector<std::vector<double>> series;
    std::string notes;

    /// Deterministic JSON (runtime excluded) for the report file.
    std::string to_json() const;
    /// Aligned human-readable table.
    std::string to_table() const;
};

/// One audited mean-field step: checks particle/energy conservation across
/// the step and the discrete second law, throwing ConservationViolated /
/// EntropyDecreased. Thermostats are applied by callers after the step.
MeanFieldState audited_step(const MeanFieldState& state, const LatticeSpec& spec,
                            const StepOptions& options);

/// Instantaneous particle flux from a temperature gradient at uniform
/// density, measured from the first mean-field step; the ratio
/// j_c / (rho grad Theta) approaches -lambda (1 - occupancy) as l -> 0.
struct SoretParams {
    double hop_rate = 0.5;
    double gamma = 1.0; // eps = gamma * l
    // Cold setup: the hop cutoff enters the ratio through the l-independent
    // factor exp(-1/(2 lambda Theta)), so lambda*Theta stays below ~0.03.
    double theta_lo = 0.04;
    double theta_hi = 0.06;
    int base_sites = 64;
    int levels = 3; // l halves per level
    std::vector<double> occupancies = {0.001, 0.01, 0.3, 0.6};
    double tol_dilute = 0.01; // finest dilute ratio vs -hop_rate itself
    double tol_dense = 0.02;  // per-occupancy ratio vs -hop_rate*(1-occ)
};
ExperimentReport soret_measurement(const SoretParams& params = {});

/// Instantaneous heat flux from a density gradient at uniform temperature;
/// j_gamma / (Theta j_c) approaches 2 as l -> 0.
struct DufourParams {
    double hop_rate = 0.5;
    double gamma = 1.0;
    double theta = 0.1;
    double occupancy_mean = 0.3;
    double occupancy_amp = 0.2;
    int base_sites = 64;
    int levels = 4;
    double tol_factor = 0.02; // finest ratio within [2(1-tol), 2(1+tol)]
};
ExperimentReport dufour_measurement(const DufourParams& params = {});

/// Discrete-to-continuum convergence under dt = l^2, eps = gamma*l: evolve
/// both models to the same physical time and report sup-norm errors per
/// refinement level plus the empirical order.
struct ConvergenceParams {
    double hop_rate = 0.25;
    double gamma = 1.0;
    int base_sites = 32;
    int base_steps = 20; // t* = base_steps * l0^2
    int levels = 4;
    int reference_cells = 1024;
    double occ_mean = 0.3;
    double occ_amp = 0.1;
    double theta_mean = 0.08;
    double theta_amp = 0.02;
    double min_order = 0.9;
};
ExperimentReport convergence_study(const ConvergenceParams& params = {});

/// Relax an initially uniform occupancy between two thermostatted boundary
/// sites; the steady profile solves Theta n' = -n(1-n) Theta'.
struct DriftParams {
    double hop_rate = 0.5;
    double gamma = 0.02; // small eps keeps the steady state close to the ODE
    int sites = 64;
    double theta_left = 0.12;
    double theta_right = 0.08;
    std::vector<double> occupancies = {0.02, 0.5};
    long max_steps = 200000;
    double steady_tol = 1e-12; // max per-step occupation change
    double profile_tol = 1e-3; // sup |n - n_ode| / n0
};
ExperimentReport thermal_drift_demo(const DriftParams& params = {});

} // namespace experiments
} // namespace soretsim
