#pragma once

#include <vector>

#include "soretsim/errors.hpp"

namespace soretsim {

/// Cell-centered fields of the continuum model on a uniform 1-D grid.
/// Cell i is centered at x_i = (i + 1/2) h.
struct ContinuumState {
    int cells = 0;
    double h = 0.0;
    double rho_max = 0.0;
    double time = 0.0;
    std::vector<double> rho;   // particles / length, in [0, rho_max]
    std::vector<double> theta; // temperature (k_B = 1), > 0
    std::vector<double> potential;

    static ContinuumState create(int cells, double length, double rho_max,
                                 std::vector<double> rho, std::vector<double> theta,
                                 std::vector<double> potential = {});

    double cell_center(int i) const { return (i + 0.5) * h; }
    void validate() const; // throws InvalidState
};

/// Face-centered currents; index f sits between cells f-1 and f, so there are
/// cells+1 faces and the boundary faces are identically zero (no flux).
struct CurrentSet {
    std::vector<double> particle; // j_c
    std::vector<double> heat;     // j_gamma
    std::vector<double> energy;   // j_e = j_gamma + V j_c, V averaged onto the face
};

/// Face fluxes with arithmetic-mean coefficients and central gradients:
///   j_c = -lambda (Theta grad rho + rho (1 - rho/rho_m) grad(Theta + V))
///   j_gamma = 2 (Theta j_c - lambda rho (1 - rho/rho_m) Theta grad Theta)
CurrentSet compute_currents(const ContinuumState& s, double hop_rate);

/// Stable explicit step. The stiffest mode is the heat field with
/// diffusivity 2 lambda Theta (1 - rho/rho_m), whose forward-Euler threshold
/// is h^2/(4 lambda Theta); that proved marginal at fine grids, so the bound
/// used is h^2/(8 lambda max Theta) scaled by `safety`.
double cfl_dt(const ContinuumState& s, double hop_rate, double safety = 0.9);

/// One conservative explicit step. dt above the stability bound throws
/// UnstableStep; densities leaving [0, rho_max] by more than 1e-10 throw
/// BoundsViolated (smaller excursions are snapped).
ContinuumState pde_step(const ContinuumState& s, double hop_rate, double dt);

/// |total energy after - before| for two consecutive states; the scheme keeps
/// this at rounding level under no-flux boundaries.
double first_law_audit(const ContinuumState& before, const ContinuumState& after);

double total_mass(const ContinuumState& s);
double total_energy(const ContinuumState& s); // integral of rho (Theta + V)

namespace detail {
/// Step with the heat-source term scaled; source_scale != 1 deliberately
/// breaks energy conservation (negative-control hook for the audit tests).
ContinuumState pde_step_scaled_source(const ContinuumState& s, double hop_rate, double dt,
                                      double source_scale);
} // namespace detail

} // namespace soretsim
