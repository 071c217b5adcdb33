#include "soretsim/soretsim.h"

#include <cstring>
#include <string>
#include <vector>

#include "soretsim/oracle.hpp"
#include "soretsim/runner.hpp"
#include "soretsim/thermo.hpp"

using namespace soretsim;

struct soretsim_lattice {
    LatticeSpec spec;
};

struct soretsim_state {
    MeanFieldState state;
    double eps = 0.0; // energy quantum of the owning lattice, for closures
};

struct soretsim_continuum {
    ContinuumState state;
};

namespace {

thread_local std::string g_last_error;

soretsim_status status_of(ErrorCode code) {
    switch (code) {
    case ErrorCode::InvalidArgument: return SORETSIM_ERR_INVALID_ARGUMENT;
    case ErrorCode::InvalidRates: return SORETSIM_ERR_INVALID_RATES;
    case ErrorCode::InvalidState: return SORETSIM_ERR_INVALID_STATE;
    case ErrorCode::EmptyOrColdSite: return SORETSIM_ERR_EMPTY_OR_COLD_SITE;
    case ErrorCode::StepTooLarge: return SORETSIM_ERR_STEP_TOO_LARGE;
    case ErrorCode::TooLarge: return SORETSIM_ERR_TOO_LARGE;
    case ErrorCode::UnstableStep: return SORETSIM_ERR_UNSTABLE_STEP;
    case ErrorCode::BoundsViolated: return SORETSIM_ERR_BOUNDS_VIOLATED;
    case ErrorCode::SingularForce: return SORETSIM_ERR_SINGULAR_FORCE;
    case ErrorCode::SingularCoord: return SORETSIM_ERR_SINGULAR_COORD;
    case ErrorCode::ConvergenceFailure: return SORETSIM_ERR_CONVERGENCE_FAILURE;
    case ErrorCode::ConservationViolated: return SORETSIM_ERR_CONSERVATION_VIOLATED;
    case ErrorCode::EntropyDecreased: return SORETSIM_ERR_ENTROPY_DECREASED;
    case ErrorCode::OracleMismatch: return SORETSIM_ERR_ORACLE_MISMATCH;
    case ErrorCode::ConfigInvalid: return SORETSIM_ERR_CONFIG_INVALID;
    case ErrorCode::Io: return SORETSIM_ERR_IO;
    case ErrorCode::Internal: return SORETSIM_ERR_INTERNAL;
    }
    return SORETSIM_ERR_INTERNAL;
}

/// Runs the body, translating exceptions into status codes.
template <typename Fn>
soretsim_status guarded(Fn&& body) {
    try {
        g_last_error.clear();
        return body();
    } catch (const Error& e) {
        g_last_error = e.what();
        return status_of(e.code());
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return SORETSIM_ERR_INTERNAL;
    } catch (...) {
        g_last_error = "unknown error";
        return SORETSIM_ERR_INTERNAL;
    }
}

soretsim_status need(bool condition, const char* message) {
    if (condition)
        return SORETSIM_OK;
    g_last_error = message;
    return SORETSIM_ERR_INVALID_ARGUMENT;
}

} // namespace

extern "C" {

const char* soretsim_status_name(soretsim_status status) {
    switch (status) {
    case SORETSIM_OK: return "ok";
    case SORETSIM_ERR_INVALID_ARGUMENT: return "invalid-argument";
    case SORETSIM_ERR_INVALID_RATES: return "invalid-rates";
    case SORETSIM_ERR_INVALID_STATE: return "invalid-state";
    case SORETSIM_ERR_EMPTY_OR_COLD_SITE: return "empty-or-cold-site";
    case SORETSIM_ERR_STEP_TOO_LARGE: return "step-too-large";
    case SORETSIM_ERR_TOO_LARGE: return "too-large";
    case SORETSIM_ERR_UNSTABLE_STEP: return "unstable-step";
    case SORETSIM_ERR_BOUNDS_VIOLATED: return "bounds-violated";
    case SORETSIM_ERR_SINGULAR_FORCE: return "singular-force";
    case SORETSIM_ERR_SINGULAR_COORD: return "singular-coord";
    case SORETSIM_ERR_CONVERGENCE_FAILURE: return "convergence-failure";
    case SORETSIM_ERR_CONSERVATION_VIOLATED: return "conservation-violated";
    case SORETSIM_ERR_ENTROPY_DECREASED: return "entropy-decreased";
    case SORETSIM_ERR_ORACLE_MISMATCH: return "oracle-mismatch";
    case SORETSIM_ERR_CONFIG_INVALID: return "config-invalid";
    case SORETSIM_ERR_IO: return "io-error";
    case SORETSIM_ERR_INTERNAL: return "internal";
    }
    return "unknown";
}

const char* soretsim_last_error(void) {
    return g_last_error.c_str();
}

int soretsim_exit_code(soretsim_status status) {
    if (status == SORETSIM_OK)
        return 0;
    // Reuse the runner mapping through the C++ error category.
    switch (status) {
    case SORETSIM_ERR_CONFIG_INVALID: return runner::exit_code_for(ErrorCode::ConfigInvalid);
    case SORETSIM_ERR_CONSERVATION_VIOLATED:
        return runner::exit_code_for(ErrorCode::ConservationViolated);
    case SORETSIM_ERR_ENTROPY_DECREASED:
        return runner::exit_code_for(ErrorCode::EntropyDecreased);
    case SORETSIM_ERR_BOUNDS_VIOLATED: return runner::exit_code_for(ErrorCode::BoundsViolated);
    case SORETSIM_ERR_INVALID_RATES: return runner::exit_code_for(ErrorCode::InvalidRates);
    case SORETSIM_ERR_ORACLE_MISMATCH: return runner::exit_code_for(ErrorCode::OracleMismatch);
    case SORETSIM_ERR_CONVERGENCE_FAILURE:
        return runner::exit_code_for(ErrorCode::ConvergenceFailure);
    case SORETSIM_ERR_IO: return runner::exit_code_for(ErrorCode::Io);
    case SORETSIM_ERR_UNSTABLE_STEP: return runner::exit_code_for(ErrorCode::UnstableStep);
    case SORETSIM_ERR_STEP_TOO_LARGE: return runner::exit_code_for(ErrorCode::StepTooLarge);
    case SORETSIM_ERR_TOO_LARGE: return runner::exit_code_for(ErrorCode::TooLarge);
    case SORETSIM_ERR_SINGULAR_FORCE:
    case SORETSIM_ERR_SINGULAR_COORD:
        return runner::exit_code_for(ErrorCode::SingularForce);
    case SORETSIM_ERR_INVALID_ARGUMENT:
    case SORETSIM_ERR_INVALID_STATE:
    case SORETSIM_ERR_EMPTY_OR_COLD_SITE:
        return runner::exit_code_for(ErrorCode::InvalidState);
    default: return runner::exit_code_for(ErrorCode::Internal);
    }
}

soretsim_status soretsim_lattice_create(int num_sites, double spacing, double energy_quantum,
                                        double hop_rate, const double* potential,
                                        soretsim_lattice** out) {
    if (soretsim_status s = need(out != nullptr, "out handle is null"))
        return s;
    return guarded([&] {
        std::vector<double> v;
        if (potential)
            v.assign(potential, potential + num_sites);
        auto handle = std::make_unique<soretsim_lattice>();
        handle->spec =
            LatticeSpec::create(num_sites, spacing, energy_quantum, hop_rate, std::move(v));
        *out = handle.release();
        return SORETSIM_OK;
    });
}

void soretsim_lattice_free(soretsim_lattice* lattice) {
    delete lattice;
}

int soretsim_lattice_num_sites(const soretsim_lattice* lattice) {
    return lattice ? lattice->spec.num_sites : 0;
}

int soretsim_lattice_k_max(const soretsim_lattice* lattice) {
    return lattice ? lattice->spec.k_max : -1;
}

double soretsim_lattice_quantization_error(const soretsim_lattice* lattice) {
    return lattice ? lattice->spec.max_quantization_error : 0.0;
}

soretsim_status soretsim_lattice_potential(const soretsim_lattice* lattice, double* out) {
    if (soretsim_status s = need(lattice && out, "null argument"))
        return s;
    std::memcpy(out, lattice->spec.potential.data(),
                lattice->spec.potential.size() * sizeof(double));
    return SORETSIM_OK;
}

soretsim_status soretsim_state_create(const soretsim_lattice* lattice, const double* n,
                                      const double* kinetic, soretsim_state** out) {
    if (soretsim_status s = need(lattice && n && kinetic && out, "null argument"))
        return s;
    return guarded([&] {
        auto handle = std::make_unique<soretsim_state>();
        handle->state.n.assign(n, n + lattice->spec.num_sites);
        handle->state.kinetic.assign(kinetic, kinetic + lattice->spec.num_sites);
        handle->state.validate(lattice->spec);
        handle->eps = lattice->spec.energy_quantum;
        *out = handle.release();
        return SORETSIM_OK;
    });
}

soretsim_status soretsim_state_from_profiles(const soretsim_lattice* lattice,
                                             const double* occupation,
                                             const double* temperature,
                                             soretsim_state** out) {
    if (soretsim_status s = need(lattice && occupation && temperature && out, "null argument"))
        return s;
    return guarded([&] {
        auto handle = std::make_unique<soretsim_state>();
        const int sites = lattice->spec.num_sites;
        handle->state.n.assign(occupation, occupation + sites);
        handle->state.kinetic.resize(sites);
        for (int i = 0; i < sites; ++i)
            handle->state.kinetic[i] = kinetic_from_theta(
                occupation[i], temperature[i], lattice->spec.energy_quantum);
        handle->state.validate(lattice->spec);
        handle->eps = lattice->spec.energy_quantum;
        *out = handle.release();
        return SORETSIM_OK;
    });
}

void soretsim_state_free(soretsim_state* state) {
    delete state;
}

soretsim_status soretsim_state_get(const soretsim_state* state, double* n, double* kinetic,
                                   double* theta) {
    if (soretsim_status s = need(state != nullptr, "null state"))
        return s;
    return guarded([&] {
        const int sites = state->state.num_sites();
        for (int i = 0; i < sites; ++i) {
            const double ni = state->state.n[i], ki = state->state.kinetic[i];
            if (n)
                n[i] = ni;
            if (kinetic)
                kinetic[i] = ki;
            if (theta)
                theta[i] = (ni > 0.0 && ki > 0.0)
                               ? closure_from_means(ni, ki, state->eps).theta
                               : 0.0;
        }
        return SORETSIM_OK;
    });
}

soretsim_status soretsim_state_step(soretsim_state* state, const soretsim_lattice* lattice,
                                    int sum_mode, double* bond_particle_flux,
                                    double* bond_energy_flux) {
    if (soretsim_status s = need(state && lattice, "null argument"))
        return s;
    if (soretsim_status s = need(sum_mode == SORETSIM_SUM_FINITE ||
                                     sum_mode == SORETSIM_SUM_INFINITE,
                                 "sum_mode must be 0 (finite) or 1 (infinite)"))
        return s;
    return guarded([&] {
        StepOptions options;
        options.mode = sum_mode == SORETSIM_SUM_FINITE ? SumMode::Finite : SumMode::Infinite;
        options.collect_fluxes = bond_particle_flux || bond_energy_flux;
        StepResult result = step_mean_field(state->state, lattice->spec, options);
        const int bonds = lattice->spec.bonds();
        if (bond_particle_flux)
            std::memcpy(bond_particle_flux, result.particle_flux.data(),
                        bonds * sizeof(double));
        if (bond_energy_flux)
            std::memcpy(bond_energy_flux, result.energy_flux.data(), bonds * sizeof(double));
        state->state = std::move(result.state);
        return SORETSIM_OK;
    });
}

soretsim_status soretsim_state_totals(const soretsim_state* state,
                                      const soretsim_lattice* lattice, double* particles,
                                      double* energy) {
    if (soretsim_status s = need(state && lattice, "null argument"))
        return s;
    return guarded([&] {
        const Totals t = totals(state->state, lattice->spec);
        if (particles)
            *particles = t.particles;
        if (energy)
            *energy = t.energy;
        return SORETSIM_OK;
    });
}

soretsim_status soretsim_state_entropy(const soretsim_state* state,
                                       const soretsim_lattice* lattice, double* entropy) {
    if (soretsim_status s = need(state && lattice && entropy, "null argument"))
        return s;
    return guarded([&] {
        *entropy = thermo::entropy_discrete(state->state, lattice->spec);
        return SORETSIM_OK;
    });
}

soretsim_status soretsim_oracle_check(const soretsim_state* state,
                                      const soretsim_lattice* lattice, int k_cap,
                                      double* max_error) {
    if (soretsim_status s = need(state && lattice && max_error, "null argument"))
        return s;
    return guarded([&] {
        const int cap = k_cap >= 0 ? k_cap : lattice->spec.k_max;
        const oracle::OracleCheck check =
            oracle::compare_with_mean_field(state->state, lattice->spec, cap);
        *max_error = check.max_error;
        return SORETSIM_OK;
    });
}

soretsim_status soretsim_continuum_create(int cells, double length, double rho_max,
                                          const double* rho, const double* theta,
                                          const double* potential,
                                          soretsim_continuum** out) {
    if (soretsim_status s = need(rho && theta && out, "null argument"))
        return s;
    return guarded([&] {
        std::vector<double> v;
        if (potential)
            v.assign(potential, potential + cells);
        auto handle = std::make_unique<soretsim_continuum>();
        handle->state = ContinuumState::create(cells, length, rho_max,
                                               std::vector<double>(rho, rho + cells),
                                               std::vector<double>(theta, theta + cells),
                                               std::move(v));
        *out = handle.release();
        return SORETSIM_OK;
    });
}

void soretsim_continuum_free(soretsim_continuum* state) {
    delete state;
}

soretsim_status soretsim_continuum_step(soretsim_continuum* state, double hop_rate,
                                        double dt, double* dt_used) {
    if (soretsim_status s = need(state != nullptr, "null state"))
        return s;
    return guarded([&] {
        const double step = dt > 0.0 ? dt : cfl_dt(state->state, hop_rate);
        state->state = pde_step(state->state, hop_rate, step);
        if (dt_used)
            *dt_used = step;
        return SORETSIM_OK;
    });
}

soretsim_status soretsim_continuum_currents(const soretsim_continuum* state,
                                            double hop_rate, double* j_c, double* j_gamma,
                                            double* j_e) {
    if (soretsim_status s = need(state != nullptr, "null state"))
        return s;
    return guarded([&] {
        const CurrentSet cur = compute_currents(state->state, hop_rate);
        const size_t faces = cur.particle.size();
        if (j_c)
            std::memcpy(j_c, cur.particle.data(), faces * sizeof(double));
        if (j_gamma)
            std::memcpy(j_gamma, cur.heat.data(), faces * sizeof(double));
        if (j_e)
            std::memcpy(j_e, cur.energy.data(), faces * sizeof(double));
        return SORETSIM_OK;
    });
}

soretsim_status soretsim_continuum_get(const soretsim_continuum* state, double* rho,
                                       double* theta, double* time) {
    if (soretsim_status s = need(state != nullptr, "null state"))
        return s;
    const ContinuumState& cs = state->state;
    if (rho)
        std::memcpy(rho, cs.rho.data(), cs.rho.size() * sizeof(double));
    if (theta)
        std::memcpy(theta, cs.theta.data(), cs.theta.size() * sizeof(double));
    if (time)
        *time = cs.time;
    return SORETSIM_OK;
}

soretsim_status soretsim_continuum_entropy(const soretsim_continuum* state, double* entropy) {
    if (soretsim_status s = need(state && entropy, "null argument"))
        return s;
    return guarded([&] {
        *entropy = thermo::entropy_continuum(state->state);
        return SORETSIM_OK;
    });
}

soretsim_status soretsim_continuum_mass_energy(const soretsim_continuum* state, double* mass,
                                               double* energy) {
    if (soretsim_status s = need(state != nullptr, "null state"))
        return s;
    if (mass)
        *mass = total_mass(state->state);
    if (energy)
        *energy = total_energy(state->state);
    return SORETSIM_OK;
}

soretsim_status soretsim_run_file(const char* config_path, const char* out_dir,
                                  const char* mode) {
    if (soretsim_status s = need(config_path != nullptr, "null config path"))
        return s;
    return guarded([&] {
        std::optional<std::string> dir, mode_override;
        if (out_dir)
            dir = out_dir;
        if (mode)
            mode_override = mode;
        const runner::RunOutcome outcome = runner::run_file(config_path, dir, mode_override);
        if (outcome.exit_code != 0) {
            g_last_error = outcome.message;
            return status_of(outcome.category);
        }
        return SORETSIM_OK;
    });
}

} // extern "C"
