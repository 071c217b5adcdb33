#pragma once

#include <array>
#include <vector>

#include "soretsim/continuum.hpp"
#include "soretsim/lattice.hpp"

namespace soretsim {
namespace thermo {

/// Entropy of the product of per-site grand-canonical states:
/// sum over sites of -(1-n)log(1-n) - n log n + n log Z + beta K,
/// with 0 log 0 = 0 and the Gibbs part dropped on empty or cold sites.
double entropy_discrete(const MeanFieldState& state, const LatticeSpec& spec);

/// Midpoint quadrature of
/// -rho log rho - (rho_m - rho) log(1 - rho/rho_m) + rho log Theta.
double entropy_continuum(const ContinuumState& s);

/// Canonical coordinates per cell: xi_c = -log(rho/(1-rho/rho_m)) + log Theta - V/Theta,
/// xi_e = 1/Theta. Requires rho in (0, rho_m); throws SingularCoord.
struct CanonicalCoords {
    std::vector<double> xi_c;
    std::vector<double> xi_e;
};
CanonicalCoords canonical_coords(const ContinuumState& s);

/// Thermodynamic forces on the faces (interior faces only, boundaries zero):
/// force_c = X^c/Theta = grad xi_c, force_e = X^e/Theta = grad xi_e.
/// Computed by differencing the canonical-coordinate arrays, so the
/// gradient-potential identity holds bit for bit.
struct Forces {
    std::vector<double> force_c; // size cells+1
    std::vector<double> force_e;
};
Forces forces(const ContinuumState& s);

/// Symmetric Onsager matrix at a point, the coefficients that reproduce
/// (j_c, j_e) from (force_c, force_e):
///   L_cc = lambda Theta g,   L_ce = L_ec = lambda Theta (V + 2 Theta) g,
///   L_ee = lambda Theta (V + 2 Theta)^2 g + 2 lambda Theta^3 g,
/// with g = rho (1 - rho/rho_m). det L = 2 lambda^2 g^2 Theta^4.
struct OnsagerMatrix {
    double cc, ce, ee; // ec = ce by construction
    std::array<double, 4> as_array() const { return {cc, ce, ce, ee}; }
};
OnsagerMatrix onsager_point(double hop_rate, double rho, double theta, double V,
                            double rho_max);

/// L evaluated at every cell.
std::vector<OnsagerMatrix> onsager_matrix(const ContinuumState& s, double hop_rate);

/// Entropy-production density on the faces: sigma = j_c force_c + j_e force_e.
struct EntropyProduction {
    std::vector<double> sigma; // size cells+1, boundaries zero
    double total;              // h * sum over interior faces = dS/dt
};
EntropyProduction entropy_production(const ContinuumState& s, double hop_rate);

/// Per-cell diagnostics table (x, entropy density, entropy production,
/// forces, transport-matrix entries, canonical coordinates); face-centered
/// quantities are averaged onto cells. Requires rho in (0, rho_max).
void write_diagnostics_csv(const ContinuumState& s, double hop_rate,
                           const std::string& path);

} // namespace thermo
} // namespace soretsim
