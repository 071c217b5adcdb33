#include "soretsim/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "soretsim/thermo.hpp"

namespace soretsim {
namespace experiments {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

Measurement check_value(std::string label, double value, double expected, double tolerance,
                        bool relative = true) {
    Measurement m;
    m.label = std::move(label);
    m.value = value;
    m.expected = expected;
    m.tolerance = tolerance;
    m.relative = relative;
    const double scale = relative ? std::max(std::abs(expected), 1e-300) : 1.0;
    m.pass = std::abs(value - expected) <= tolerance * scale;
    return m;
}

Measurement check_below(std::string label, double value, double bound) {
    Measurement m;
    m.label = std::move(label);
    m.value = value;
    m.expected = bound;
    m.tolerance = 0.0;
    m.relative = false;
    m.pass = value <= bound;
    return m;
}

/// Linear interpolation between cell centers of a fine reference grid.
double interp_cells(const std::vector<double>& field, double h, double x) {
    const int cells = static_cast<int>(field.size());
    const double pos = x / h - 0.5;
    if (pos <= 0.0)
        return field.front();
    if (pos >= cells - 1)
        return field.back();
    const int i = static_cast<int>(pos);
    const double frac = pos - i;
    return field[i] * (1.0 - frac) + field[i + 1] * frac;
}

} // namespace

StepResult audited_step_impl(const MeanFieldState& state, const LatticeSpec& spec,
                             StepOptions options) {
    const Totals before = totals(state, spec);
    const double entropy_before = thermo::entropy_discrete(state, spec);
    options.collect_fluxes = true;
    StepResult result = step_mean_field(state, spec, options);
    const Totals after = totals(result.state, spec);
    const double scale_n = std::max(1.0, std::abs(before.particles));
    const double scale_e = std::max(1.0, std::abs(before.energy));
    if (std::abs(after.particles - before.particles) > 1e-12 * scale_n)
        raise(ErrorCode::ConservationViolated, "particle number drifted in one step");
    if (std::abs(after.energy - before.energy) > 1e-12 * scale_e)
        raise(ErrorCode::ConservationViolated, "total energy drifted in one step");
    const double entropy_after = thermo::entropy_discrete(result.state, spec);
    if (entropy_after < entropy_before - 1e-12)
        raise(ErrorCode::EntropyDecreased, "discrete entropy decreased in one step");
    return result;
}

MeanFieldState audited_step(const MeanFieldState& state, const LatticeSpec& spec,
                            const StepOptions& options) {
    return audited_step_impl(state, spec, options).state;
}

// ---------------------------------------------------------------------------
// Soret: particle current against a temperature gradient.
// ---------------------------------------------------------------------------

ExperimentReport soret_measurement(const SoretParams& params) {
    const auto t0 = Clock::now();
    ExperimentReport report;
    report.name = "soret";
    report.parameters = {{"hop_rate", params.hop_rate},
                         {"gamma", params.gamma},
                         {"theta_lo", params.theta_lo},
                         {"theta_hi", params.theta_hi},
                         {"base_sites", static_cast<double>(params.base_sites)},
                         {"levels", static_cast<double>(params.levels)}};
    report.series_header = {"occupancy", "level", "spacing", "ratio", "expected",
                            "rel_deviation"};

    double most_dilute_ratio = 0.0;
    double most_dilute_occ = 1.0;
    for (double occ : params.occupancies) {
        const double expected = -params.hop_rate * (1.0 - occ);
        double finest_ratio = 0.0;
        for (int level = 0; level < params.levels; ++level) {
            const int sites = params.base_sites << level;
            const double l = 1.0 / sites;
            const double eps = params.gamma * l;
            const LatticeSpec spec = LatticeSpec::create(sites, l, eps, params.hop_rate);

            MeanFieldState s;
            s.n.assign(sites, occ);
            s.kinetic.resize(sites);
            auto theta_at = [&](int i) {
                return params.theta_lo +
                       (params.theta_hi - params.theta_lo) * (i + 0.5) * l;
            };
            for (int i = 0; i < sites; ++i)
                s.kinetic[i] = kinetic_from_theta(occ, theta_at(i), eps);

            const StepResult step = audited_step_impl(s, spec, {});
            const int b = sites / 2; // central bond
            const double dtheta = theta_at(b + 1) - theta_at(b);
            const double ratio = step.particle_flux[b] / (occ * dtheta);
            finest_ratio = ratio;
            report.series.push_back({occ, static_cast<double>(level), l, ratio, expected,
                                     std::abs(ratio - expected) / std::abs(expected)});
        }
        char label[96];
        std::snprintf(label, sizeof label, "ratio j_c/(rho grad Theta), occupancy %.3f",
                      occ);
        report.measurements.push_back(
            check_value(label, finest_ratio, expected, params.tol_dense));
        if (occ < most_dilute_occ) {
            most_dilute_occ = occ;
            most_dilute_ratio = finest_ratio;
        }
    }
    // In the dilute limit the coefficient is the hop rate itself.
    report.measurements.push_back(check_value("dilute ratio vs -hop_rate",
                                              most_dilute_ratio, -params.hop_rate,
                                              params.tol_dilute));

    // Null check: no gradient, no current.
    {
        const int sites = params.base_sites;
        const double l = 1.0 / sites;
        const double eps = params.gamma * l;
        const LatticeSpec spec = LatticeSpec::create(sites, l, eps, params.hop_rate);
        MeanFieldState s;
        s.n.assign(sites, 0.3);
        s.kinetic.assign(sites, kinetic_from_theta(0.3, params.theta_lo, eps));
        const StepResult step = audited_step_impl(s, spec, {});
        double worst = 0.0;
        for (double f : step.particle_flux)
            worst = std::max(worst, std::abs(f));
        report.measurements.push_back(check_below("zero gradient -> zero current", worst,
                                                  1e-15));
    }

    report.pass = std::all_of(report.measurements.begin(), report.measurements.end(),
                              [](const Measurement& m) { return m.pass; });
    report.runtime_seconds = seconds_since(t0);
    return report;
}

// ---------------------------------------------------------------------------
// Dufour: heat current from a density gradient at uniform temperature.
// ---------------------------------------------------------------------------

ExperimentReport dufour_measurement(const DufourParams& params) {
    const auto t0 = Clock::now();
    ExperimentReport report;
    report.name = "dufour";
    report.parameters = {{"hop_rate", params.hop_rate},
                         {"gamma", params.gamma},
                         {"theta", params.theta},
                         {"occupancy_mean", params.occupancy_mean},
                         {"occupancy_amp", params.occupancy_amp},
                         {"base_sites", static_cast<double>(params.base_sites)},
                         {"levels", static_cast<double>(params.levels)}};
    report.series_header = {"level", "spacing", "ratio", "abs_error"};

    std::vector<double> errors;
    double finest_ratio = 0.0;
    for (int level = 0; level < params.levels; ++level) {
        const int sites = params.base_sites << level;
        const double l = 1.0 / sites;
        const double eps = params.gamma * l;
        const LatticeSpec spec = LatticeSpec::create(sites, l, eps, params.hop_rate);

        MeanFieldState s;
        s.n.resize(sites);
        s.kinetic.resize(sites);
        for (int i = 0; i < sites; ++i) {
            const double x = (i + 0.5) * l;
            s.n[i] = params.occupancy_mean +
                     params.occupancy_amp * std::sin(2.0 * M_PI * x);
            s.kinetic[i] = kinetic_from_theta(s.n[i], params.theta, eps);
        }

        const StepResult step = audited_step_impl(s, spec, {});
        const int b = sites / 2 - 1; // bond at x = 1/2, steepest density slope
        const double jc = step.particle_flux[b];
        const double jg = step.energy_flux[b]; // V = 0: pure kinetic transport
        const double ratio = jg / (params.theta * jc);
        finest_ratio = ratio;
        errors.push_back(std::abs(ratio - 2.0));
        report.series.push_back({static_cast<double>(level), l, ratio, errors.back()});
    }

    report.measurements.push_back(check_value("ratio j_gamma/(Theta j_c) at finest l",
                                              finest_ratio, 2.0, params.tol_factor));
    bool monotone = true;
    for (size_t i = 1; i < errors.size(); ++i)
        monotone = monotone && errors[i] < errors[i - 1];
    Measurement mono;
    mono.label = "|ratio - 2| decreases at every halving of l";
    mono.value = monotone ? 1.0 : 0.0;
    mono.expected = 1.0;
    mono.tolerance = 0.0;
    mono.relative = false;
    mono.pass = monotone;
    report.measurements.push_back(mono);

    // Uniform density as well -> both fluxes vanish.
    {
        const int sites = params.base_sites;
        const double l = 1.0 / sites;
        const double eps = params.gamma * l;
        const LatticeSpec spec = LatticeSpec::create(sites, l, eps, params.hop_rate);
        MeanFieldState s;
        s.n.assign(sites, params.occupancy_mean);
        s.kinetic.assign(sites,
                         kinetic_from_theta(params.occupancy_mean, params.theta, eps));
        const StepResult step = audited_step_impl(s, spec, {});
        double worst = 0.0;
        for (int b = 0; b < spec.bonds(); ++b)
            worst = std::max({worst, std::abs(step.particle_flux[b]),
                              std::abs(step.energy_flux[b])});
        report.measurements.push_back(check_below("uniform state -> zero fluxes", worst,
                                                  1e-15));
    }

    report.pass = std::all_of(report.measurements.begin(), report.measurements.end(),
                              [](const Measurement& m) { return m.pass; });
    report.runtime_seconds = seconds_since(t0);
    return report;
}

// ---------------------------------------------------------------------------
// Convergence of the discrete model to the continuum equations.
// ---------------------------------------------------------------------------

ExperimentReport convergence_study(const ConvergenceParams& params) {
    const auto t0 = Clock::now();
    ExperimentReport report;
    report.name = "convergence";
    report.parameters = {{"hop_rate", params.hop_rate},
                         {"gamma", params.gamma},
                         {"base_sites", static_cast<double>(params.base_sites)},
                         {"base_steps", static_cast<double>(params.base_steps)},
                         {"levels", static_cast<double>(params.levels)},
                         {"reference_cells", static_cast<double>(params.reference_cells)}};
    report.series_header = {"level", "spacing", "sup_err_occupancy", "sup_err_theta",
                            "combined", "taylor_flux_dev"};

    const double l0 = 1.0 / params.base_sites;
    const double t_star = params.base_steps * l0 * l0;
    auto rho_at = [&](double x) { return params.occ_mean + params.occ_amp * std::cos(M_PI * x); };
    auto theta_at = [&](double x) {
        return params.theta_mean + params.theta_amp * std::cos(M_PI * x);
    };

    if (params.base_steps == 0) {
        // Zero elapsed time: the reference is the initial data itself, so the
        // comparison must come out exact (closure round-trip rounding only).
        double worst = 0.0;
        for (int level = 0; level < params.levels; ++level) {
            const int sites = params.base_sites << level;
            const double l = 1.0 / sites;
            const double eps = params.gamma * l;
            for (int i = 0; i < sites; ++i) {
                const double x = (i + 0.5) * l;
                const double n = rho_at(x);
                const double K = kinetic_from_theta(n, theta_at(x), eps);
                const double theta = closure_from_means(n, K, eps).theta;
                worst = std::max(worst, std::abs(theta - theta_at(x)));
            }
        }
        report.measurements.push_back(check_below("zero-time error", worst, 1e-14));
        report.pass = report.measurements.back().pass;
        report.runtime_seconds = seconds_since(t0);
        return report;
    }

    // Grid-converged continuum reference (occupancy normalization: rho_max = 1).
    ContinuumState ref = [&] {
        const int cells = params.reference_cells;
        std::vector<double> rho(cells), theta(cells);
        for (int i = 0; i < cells; ++i) {
            const double x = (i + 0.5) / cells;
            rho[i] = rho_at(x);
            theta[i] = theta_at(x);
        }
        return ContinuumState::create(cells, 1.0, 1.0, rho, theta);
    }();
    {
        // Adaptive stepping: the temperature maximum can drift upward during
        // the run, so the stability bound is re-evaluated every step.
        double remaining = t_star;
        while (remaining > 1e-15 * t_star) {
            double dt = std::min(cfl_dt(ref, params.hop_rate), remaining);
            if (remaining - dt < 0.5 * dt && remaining > dt)
                dt = 0.5 * remaining; // avoid a tiny trailing step
            ref = pde_step(ref, params.hop_rate, dt);
            remaining -= dt;
        }
    }

    std::vector<double> combined_errors, taylor_devs;
    for (int level = 0; level < params.levels; ++level) {
        const int sites = params.base_sites << level;
        const double l = 1.0 / sites;
        const double eps = params.gamma * l;
        const LatticeSpec spec = LatticeSpec::create(sites, l, eps, params.hop_rate);
        const long steps = static_cast<long>(params.base_steps) << (2 * level);

        MeanFieldState s;
        s.n.resize(sites);
        s.kinetic.resize(sites);
        for (int i = 0; i < sites; ++i) {
            const double x = (i + 0.5) * l;
            s.n[i] = rho_at(x);
            s.kinetic[i] = kinetic_from_theta(s.n[i], theta_at(x), eps);
        }

        // One-step flux consistency against the continuum currents on the
        // same grid (the discrete current is flux * l / dt = flux / l).
        double taylor = 0.0;
        {
            ContinuumState same = [&] {
                std::vector<double> rho(sites), theta(sites);
                for (int i = 0; i < sites; ++i) {
                    rho[i] = s.n[i];
                    theta[i] = theta_at((i + 0.5) * l);
                }
                return ContinuumState::create(sites, 1.0, 1.0, rho, theta);
            }();
            const CurrentSet cur = compute_currents(same, params.hop_rate);
            const StepResult first = audited_step_impl(s, spec, {});
            double scale = 0.0;
            for (int f = 1; f < sites; ++f)
                scale = std::max(scale, std::abs(cur.particle[f]));
            for (int b = 0; b < spec.bonds(); ++b)
                taylor = std::max(taylor,
                                  std::abs(first.particle_flux[b] / l - cur.particle[b + 1]));
            taylor /= scale;
            taylor_devs.push_back(taylor);
        }

        for (long i = 0; i < steps; ++i)
            s = audited_step(s, spec, {});

        double err_n = 0.0, err_th = 0.0;
        for (int i = 0; i < sites; ++i) {
            const double x = (i + 0.5) * l;
            err_n = std::max(err_n, std::abs(s.n[i] - interp_cells(ref.rho, ref.h, x)));
            const double theta_i =
                s.n[i] > 0.0 && s.kinetic[i] > 0.0
                    ? closure_from_means(s.n[i], s.kinetic[i], eps).theta
                    : 0.0;
            err_th = std::max(err_th, std::abs(theta_i - interp_cells(ref.theta, ref.h, x)));
        }
        const double combined =
            std::max(err_n / params.occ_amp, err_th / params.theta_amp);
        combined_errors.push_back(combined);
        report.series.push_back({static_cast<double>(level), l, err_n, err_th, combined,
                                 taylor});
    }

    for (size_t m = 0; m + 1 < combined_errors.size(); ++m) {
        if (!(combined_errors[m + 1] < combined_errors[m]))
            raise(ErrorCode::ConvergenceFailure,
                  "discrete-to-continuum errors are not strictly decreasing");
    }
    double min_order = 1e9;
    for (size_t m = 0; m + 1 < combined_errors.size(); ++m)
        min_order = std::min(min_order,
                             std::log2(combined_errors[m] / combined_errors[m + 1]));
    Measurement order;
    order.label = "empirical convergence order (min over levels)";
    order.value = min_order;
    order.expected = params.min_order;
    order.tolerance = 0.0;
    order.relative = false;
    order.pass = min_order >= params.min_order;
    report.measurements.push_back(order);
    report.measurements.push_back(
        check_below("finest-level combined sup error", combined_errors.back(),
                    combined_errors.front()));
    Measurement taylor;
    taylor.label = "one-step flux deviation shrinks with l";
    taylor.value = taylor_devs.back();
    taylor.expected = taylor_devs.front();
    taylor.tolerance = 0.0;
    taylor.relative = false;
    taylor.pass = taylor_devs.back() < taylor_devs.front();
    report.measurements.push_back(taylor);

    report.pass = std::all_of(report.measurements.begin(), report.measurements.end(),
                              [](const Measurement& m) { return m.pass; });
    report.runtime_seconds = seconds_since(t0);
    return report;
}

// ---------------------------------------------------------------------------
// Thermal drift: steady density profile between two thermostats.
// ---------------------------------------------------------------------------

namespace {

/// Steady-profile oracle: integrate n'(x) = -n(1-n) Theta'/Theta through the
/// measured (piecewise-linear) temperature profile with RK4 substeps inside
/// each segment, then pick the left value by bisection on total occupation.
std::vector<double> zero_flux_profile(const std::vector<double>& theta, double target_total) {
    const int sites = static_cast<int>(theta.size());
    const auto integrate = [&](double left_value) {
        std::vector<double> n(sites);
        n[0] = left_value;
        for (int i = 0; i + 1 < sites; ++i) {
            // Within the segment Theta is linear; x measured in segment units.
            const double th0 = theta[i];
            const double dth = theta[i + 1] - theta[i];
            auto slope = [&](double t, double value) {
                const double th = th0 + dth * t;
                return -value * (1.0 - value) * dth / th;
            };
            double v = n[i];
            const int substeps = 4;
            const double hh = 1.0 / substeps;
            for (int ss = 0; ss < substeps; ++ss) {
                const double t = ss * hh;
                const double k1 = slope(t, v);
                const double k2 = slope(t + 0.5 * hh, v + 0.5 * hh * k1);
                const double k3 = slope(t + 0.5 * hh, v + 0.5 * hh * k2);
                const double k4 = slope(t + hh, v + hh * k3);
                v += hh / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
            }
            n[i + 1] = v;
        }
        return n;
    };

    double lo = 0.0, hi = 1.0;
    std::vector<double> best;
    for (int iter = 0; iter < 200; ++iter) {
        const double mid = 0.5 * (lo + hi);
        best = integrate(mid);
        double total = 0.0;
        for (double v : best)
            total += v;
        if (total < target_total)
            lo = mid;
        else
            hi = mid;
    }
    return best;
}

} // namespace

ExperimentReport thermal_drift_demo(const DriftParams& params) {
    const auto t0 = Clock::now();
    ExperimentReport report;
    report.name = "drift";
    report.parameters = {{"hop_rate", params.hop_rate},
                         {"gamma", params.gamma},
                         {"sites", static_cast<double>(params.sites)},
                         {"theta_left", params.theta_left},
                         {"theta_right", params.theta_right},
                         {"max_steps", static_cast<double>(params.max_steps)},
                         {"steady_tol", params.steady_tol}};
    report.series_header = {"occupancy", "steps_to_steady", "max_step_change",
                            "sup_dev_vs_ode", "sup_dev_vs_inverse_theta"};

    const int sites = params.sites;
    const double l = 1.0 / sites;
    const double eps = params.gamma * l;
    const LatticeSpec spec = LatticeSpec::create(sites, l, eps, params.hop_rate);
    const StepOptions options{SumMode::Infinite, -1, false};

    for (double occ : params.occupancies) {
        MeanFieldState s;
        s.n.assign(sites, occ);
        s.kinetic.resize(sites);
        for (int i = 0; i < sites; ++i) {
            const double x = (i + 0.5) * l;
            const double theta =
                params.theta_left + (params.theta_right - params.theta_left) * x;
            s.kinetic[i] = kinetic_from_theta(occ, theta, eps);
        }
        // Pin the boundary temperatures from the start.
        s.kinetic[0] = kinetic_from_theta(s.n[0], params.theta_left, eps);
        s.kinetic[sites - 1] = kinetic_from_theta(s.n[sites - 1], params.theta_right, eps);

        long steps = 0;
        double change = 1.0;
        while (steps < params.max_steps && change >= params.steady_tol) {
            const MeanFieldState next = audited_step(s, spec, options);
            change = 0.0;
            for (int i = 0; i < sites; ++i)
                change = std::max(change, std::abs(next.n[i] - s.n[i]));
            s = next;
            s.kinetic[0] = kinetic_from_theta(s.n[0], params.theta_left, eps);
            s.kinetic[sites - 1] =
                kinetic_from_theta(s.n[sites - 1], params.theta_right, eps);
            ++steps;
        }
        report.notes += (change < params.steady_tol)
                            ? "steady state reached by per-step change threshold; "
                            : "step budget exhausted before the change threshold; ";

        // Measured steady fields.
        std::vector<double> theta(sites);
        for (int i = 0; i < sites; ++i)
            theta[i] = closure_from_means(s.n[i], s.kinetic[i], eps).theta;
        double total = 0.0;
        for (double v : s.n)
            total += v;

        const std::vector<double> ode = zero_flux_profile(theta, total);
        double dev_ode = 0.0;
        for (int i = 0; i < sites; ++i)
            dev_ode = std::max(dev_ode, std::abs(s.n[i] - ode[i]));
        dev_ode /= occ;

        // Dilute analytic limit: n proportional to 1/Theta.
        double inv_sum = 0.0;
        for (int i = 0; i < sites; ++i)
            inv_sum += 1.0 / theta[i];
        const double c = total / inv_sum;
        double dev_inv = 0.0;
        for (int i = 0; i < sites; ++i)
            dev_inv = std::max(dev_inv, std::abs(s.n[i] - c / theta[i]));
        dev_inv /= occ;

        report.series.push_back({occ, static_cast<double>(steps), change, dev_ode, dev_inv});

        char label[96];
        std::snprintf(label, sizeof label,
                      "steady profile vs zero-flux ODE, occupancy %.2f", occ);
        report.measurements.push_back(check_below(label, dev_ode, params.profile_tol));
        if (occ <= 0.05) {
            std::snprintf(label, sizeof label,
                          "dilute steady profile vs 1/Theta, occupancy %.2f", occ);
            report.measurements.push_back(check_below(label, dev_inv, 0.01));
        }
    }

    // Uniform thermostats keep a uniform profile (trivial control).
    {
        MeanFieldState s;
        s.n.assign(sites, 0.3);
        s.kinetic.assign(sites, kinetic_from_theta(0.3, params.theta_left, eps));
        for (int i = 0; i < 500; ++i) {
            s = audited_step(s, spec, options);
            s.kinetic[0] = kinetic_from_theta(s.n[0], params.theta_left, eps);
            s.kinetic[sites - 1] = kinetic_from_theta(s.n[sites - 1], params.theta_left, eps);
        }
        double dev = 0.0;
        for (double v : s.n)
            dev = std::max(dev, std::abs(v - 0.3));
        report.measurements.push_back(
            check_below("uniform thermostats keep a uniform profile", dev, 1e-12));
    }

    report.pass = std::all_of(report.measurements.begin(), report.measurements.end(),
                              [](const Measurement& m) { return m.pass; });
    report.runtime_seconds = seconds_since(t0);
    return report;
}

// ---------------------------------------------------------------------------
// Report rendering.
// ---------------------------------------------------------------------------

std::string ExperimentReport::to_json() const {
    nlohmann::ordered_json j;
    j["name"] = name;
    nlohmann::ordered_json p;
    for (const auto& [key, value] : parameters)
        p[key] = value;
    j["parameters"] = p;
    nlohmann::ordered_json ms = nlohmann::ordered_json::array();
    for (const Measurement& m : measurements) {
        nlohmann::ordered_json one;
        one["label"] = m.label;
        one["value"] = m.value;
        one["expected"] = m.expected;
        one["tolerance"] = m.tolerance;
        one["tolerance_kind"] = m.relative ? "relative" : "absolute";
        one["pass"] = m.pass;
        ms.push_back(one);
    }
    j["measurements"] = ms;
    if (!series.empty()) {
        j["series_header"] = series_header;
        j["series"] = series;
    }
    if (!notes.empty())
        j["notes"] = notes;
    j["pass"] = pass;
    return j.dump(2) + "\n";
}

std::string ExperimentReport::to_table() const {
    std::ostringstream out;
    out << "experiment: " << name << "\n";
    size_t width = 0;
    for (const Measurement& m : measurements)
        width = std::max(width, m.label.size());
    char buf[256];
    for (const Measurement& m : measurements) {
        std::snprintf(buf, sizeof buf, "  %-*s  %14.8g  (expected %.8g, tol %.3g %s)  %s\n",
                      static_cast<int>(width), m.label.c_str(), m.value, m.expected,
                      m.tolerance, m.relative ? "rel" : "abs", m.pass ? "pass" : "FAIL");
        out << buf;
    }
    out << "  overall: " << (pass ? "pass" : "FAIL") << "\n";
    return out.str();
}

} // namespace experiments
} // namespace soretsim
