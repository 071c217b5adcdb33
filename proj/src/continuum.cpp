#include "soretsim/continuum.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace soretsim {

namespace {
constexpr double kBoundsGrace = 1e-10;
constexpr double kEmptyCellFraction = 1e-12;
} // namespace

ContinuumState ContinuumState::create(int cells, double length, double rho_max,
                                      std::vector<double> rho, std::vector<double> theta,
                                      std::vector<double> potential) {
    if (cells < 2)
        raise(ErrorCode::InvalidArgument, "grid needs at least 2 cells");
    if (!(length > 0.0) || !(rho_max > 0.0))
        raise(ErrorCode::InvalidArgument, "length and rho_max must be positive");
    if (static_cast<int>(rho.size()) != cells || static_cast<int>(theta.size()) != cells)
        raise(ErrorCode::InvalidArgument, "field arrays do not match cell count");
    if (!potential.empty() && static_cast<int>(potential.size()) != cells)
        raise(ErrorCode::InvalidArgument, "potential array does not match cell count");
    if (potential.empty())
        potential.assign(cells, 0.0);

    ContinuumState s;
    s.cells = cells;
    s.h = length / cells;
    s.rho_max = rho_max;
    s.rho = std::move(rho);
    s.theta = std::move(theta);
    s.potential = std::move(potential);
    s.validate();
    return s;
}

void ContinuumState::validate() const {
    for (int i = 0; i < cells; ++i) {
        if (!(rho[i] >= 0.0) || !(rho[i] <= rho_max) || std::isnan(rho[i]))
            raise(ErrorCode::InvalidState,
                  "density out of [0, rho_max] at cell " + std::to_string(i));
        if (!(theta[i] > 0.0) || std::isnan(theta[i]))
            raise(ErrorCode::InvalidState,
                  "temperature not positive at cell " + std::to_string(i));
    }
}

CurrentSet compute_currents(const ContinuumState& s, double hop_rate) {
    s.validate();
    const int faces = s.cells + 1;
    CurrentSet c;
    c.particle.assign(faces, 0.0);
    c.heat.assign(faces, 0.0);
    c.energy.assign(faces, 0.0);

    for (int f = 1; f < s.cells; ++f) {
        const int i = f - 1, j = f;
        const double rho_f = 0.5 * (s.rho[i] + s.rho[j]);
        const double theta_f = 0.5 * (s.theta[i] + s.theta[j]);
        const double v_f = 0.5 * (s.potential[i] + s.potential[j]);
        const double grad_rho = (s.rho[j] - s.rho[i]) / s.h;
        const double grad_theta = (s.theta[j] - s.theta[i]) / s.h;
        const double grad_v = (s.potential[j] - s.potential[i]) / s.h;
        const double mobility = rho_f * (1.0 - rho_f / s.rho_max);

        const double jc = -hop_rate * (theta_f * grad_rho + mobility * (grad_theta + grad_v));
        const double jg = 2.0 * (theta_f * jc - hop_rate * mobility * theta_f * grad_theta);
        c.particle[f] = jc;
        c.heat[f] = jg;
        c.energy[f] = jg + v_f * jc;
    }
    return c;
}

double cfl_dt(const ContinuumState& s, double hop_rate, double safety) {
    const double theta_max = *std::max_element(s.theta.begin(), s.theta.end());
    return safety * s.h * s.h / (8.0 * hop_rate * theta_max);
}

namespace detail {

ContinuumState pde_step_scaled_source(const ContinuumState& s, double hop_rate, double dt,
                                      double source_scale) {
    if (!(dt > 0.0))
        raise(ErrorCode::InvalidArgument, "dt must be positive");
    if (dt > cfl_dt(s, hop_rate, 1.0) * (1.0 + 1e-12))
        raise(ErrorCode::UnstableStep, "dt exceeds the explicit stability bound");

    const CurrentSet cur = compute_currents(s, hop_rate);
    ContinuumState out = s;
    out.time = s.time + dt;

    for (int i = 0; i < s.cells; ++i) {
        const double div_jc = (cur.particle[i + 1] - cur.particle[i]) / s.h;
        const double div_jg = (cur.heat[i + 1] - cur.heat[i]) / s.h;

        // Heat source -j_c dV/dx as the average of the two adjoining face
        // products; boundary faces carry no flux so their product is zero.
        double src = 0.0;
        if (i > 0)
            src += cur.particle[i] * (s.potential[i] - s.potential[i - 1]) / s.h;
        if (i + 1 < s.cells)
            src += cur.particle[i + 1] * (s.potential[i + 1] - s.potential[i]) / s.h;
        src *= 0.5 * source_scale;

        double rho_new = s.rho[i] - dt * div_jc;
        double heat_new = s.rho[i] * s.theta[i] - dt * div_jg - dt * src;

        if (rho_new < 0.0) {
            if (rho_new < -kBoundsGrace)
                raise(ErrorCode::BoundsViolated,
                      "density fell below 0 at cell " + std::to_string(i));
            rho_new = 0.0;
        } else if (rho_new > s.rho_max) {
            if (rho_new > s.rho_max + kBoundsGrace)
                raise(ErrorCode::BoundsViolated,
                      "density exceeded rho_max at cell " + std::to_string(i));
            rho_new = s.rho_max;
        }

        out.rho[i] = rho_new;
        if (rho_new < kEmptyCellFraction * s.rho_max) {
            out.theta[i] = s.theta[i]; // near-vacuum cell: hold temperature
        } else {
            out.theta[i] = heat_new / rho_new;
            if (!(out.theta[i] > 0.0))
                raise(ErrorCode::BoundsViolated,
                      "temperature not positive at cell " + std::to_string(i));
        }
    }
    return out;
}

} // namespace detail

ContinuumState pde_step(const ContinuumState& s, double hop_rate, double dt) {
    return detail::pde_step_scaled_source(s, hop_rate, dt, 1.0);
}

double total_mass(const ContinuumState& s) {
    double acc = 0.0;
    for (int i = 0; i < s.cells; ++i)
        acc += s.rho[i];
    return acc * s.h;
}

double total_energy(const ContinuumState& s) {
    double acc = 0.0;
    for (int i = 0; i < s.cells; ++i)
        acc += s.rho[i] * (s.theta[i] + s.potential[i]);
    return acc * s.h;
}

double first_law_audit(const ContinuumState& before, const ContinuumState& after) {
    return std::abs(total_energy(after) - total_energy(before));
}

} // namespace soretsim
