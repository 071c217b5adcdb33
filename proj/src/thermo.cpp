#include "soretsim/thermo.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>

namespace soretsim {
namespace thermo {

namespace {

double xlogx(double v) {
    return v > 0.0 ? v * std::log(v) : 0.0;
}

void require_interior(const ContinuumState& s, ErrorCode code) {
    for (int i = 0; i < s.cells; ++i) {
        if (!(s.rho[i] > 0.0) || !(s.rho[i] < s.rho_max))
            raise(code, "density at the domain boundary in cell " + std::to_string(i));
        if (!(s.theta[i] > 0.0))
            raise(code, "temperature not positive in cell " + std::to_string(i));
    }
}

} // namespace

double entropy_discrete(const MeanFieldState& state, const LatticeSpec& spec) {
    state.validate(spec);
    const double eps = spec.energy_quantum;
    double s = 0.0;
    for (int x = 0; x < spec.num_sites; ++x) {
        const double n = std::clamp(state.n[x], 0.0, 1.0);
        const double K = std::max(state.kinetic[x], 0.0);
        s -= xlogx(1.0 - n);
        s -= xlogx(n);
        if (n > 0.0 && K > 0.0) {
            const SiteClosure c = closure_from_means(n, K, eps);
            s += n * std::log(c.Z) + c.beta * K;
        }
    }
    return s;
}

double entropy_continuum(const ContinuumState& s) {
    s.validate();
    double acc = 0.0;
    for (int i = 0; i < s.cells; ++i) {
        const double rho = s.rho[i];
        double cell = -xlogx(rho);
        const double fill = rho / s.rho_max;
        if (fill < 1.0)
            cell -= (s.rho_max - rho) * std::log1p(-fill);
        if (rho > 0.0)
            cell += rho * std::log(s.theta[i]);
        acc += cell;
    }
    return acc * s.h;
}

CanonicalCoords canonical_coords(const ContinuumState& s) {
    require_interior(s, ErrorCode::SingularCoord);
    CanonicalCoords c;
    c.xi_c.resize(s.cells);
    c.xi_e.resize(s.cells);
    for (int i = 0; i < s.cells; ++i) {
        const double filled = s.rho[i] / (1.0 - s.rho[i] / s.rho_max);
        c.xi_c[i] = -std::log(filled) + std::log(s.theta[i]) - s.potential[i] / s.theta[i];
        c.xi_e[i] = 1.0 / s.theta[i];
    }
    return c;
}

Forces forces(const ContinuumState& s) {
    require_interior(s, ErrorCode::SingularForce);
    const CanonicalCoords c = canonical_coords(s);
    Forces f;
    f.force_c.assign(s.cells + 1, 0.0);
    f.force_e.assign(s.cells + 1, 0.0);
    for (int face = 1; face < s.cells; ++face) {
        f.force_c[face] = (c.xi_c[face] - c.xi_c[face - 1]) / s.h;
        f.force_e[face] = (c.xi_e[face] - c.xi_e[face - 1]) / s.h;
    }
    return f;
}

OnsagerMatrix onsager_point(double hop_rate, double rho, double theta, double V,
                            double rho_max) {
    const double g = rho * (1.0 - rho / rho_max);
    const double convected = V + 2.0 * theta;
    OnsagerMatrix L;
    L.cc = hop_rate * theta * g;
    L.ce = hop_rate * theta * convected * g;
    L.ee = hop_rate * theta * convected * convected * g + 2.0 * hop_rate * theta * theta * theta * g;
    return L;
}

std::vector<OnsagerMatrix> onsager_matrix(const ContinuumState& s, double hop_rate) {
    s.validate();
    std::vector<OnsagerMatrix> out;
    out.reserve(s.cells);
    for (int i = 0; i < s.cells; ++i)
        out.push_back(onsager_point(hop_rate, s.rho[i], s.theta[i], s.potential[i], s.rho_max));
    return out;
}

EntropyProduction entropy_production(const ContinuumState& s, double hop_rate) {
    const Forces f = forces(s);
    const CurrentSet cur = compute_currents(s, hop_rate);
    EntropyProduction out;
    out.sigma.assign(s.cells + 1, 0.0);
    out.total = 0.0;
    for (int face = 1; face < s.cells; ++face) {
        out.sigma[face] = cur.particle[face] * f.force_c[face] + cur.energy[face] * f.force_e[face];
        out.total += out.sigma[face];
    }
    out.total *= s.h;
    return out;
}

void write_diagnostics_csv(const ContinuumState& s, double hop_rate,
                           const std::string& path) {
    const CanonicalCoords coords = canonical_coords(s);
    const Forces f = forces(s);
    const EntropyProduction ep = entropy_production(s, hop_rate);
    const std::vector<OnsagerMatrix> L = onsager_matrix(s, hop_rate);

    std::ofstream out(path);
    if (!out)
        raise(ErrorCode::Io, "cannot write " + path);
    out << "x,s_density,sigma,force_c,force_e,L_cc,L_ce,L_ee,xi_c,xi_e\n";
    char buf[40];
    const auto field = [&](double v, bool last = false) {
        std::snprintf(buf, sizeof buf, "%.17g", v);
        out << buf << (last ? "\n" : ",");
    };
    for (int i = 0; i < s.cells; ++i) {
        const double rho = s.rho[i];
        const double density = -xlogx(rho) -
                               (s.rho_max - rho) * std::log1p(-rho / s.rho_max) +
                               rho * std::log(s.theta[i]);
        field(s.cell_center(i));
        field(density);
        field(0.5 * (ep.sigma[i] + ep.sigma[i + 1]));
        field(0.5 * (f.force_c[i] + f.force_c[i + 1]));
        field(0.5 * (f.force_e[i] + f.force_e[i + 1]));
        field(L[i].cc);
        field(L[i].ce);
        field(L[i].ee);
        field(coords.xi_c[i]);
        field(coords.xi_e[i], true);
    }
}

} // namespace thermo
} // namespace soretsim
