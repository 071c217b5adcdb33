#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "soretsim/lattice.hpp"

namespace soretsim::testing {

/// Deterministic random valid state: occupations away from the endpoints,
/// temperatures inside [theta_lo, theta_hi] mapped to K through the closure.
inline MeanFieldState random_state(const LatticeSpec& spec, std::mt19937& rng,
                                   double theta_lo, double theta_hi,
                                   double n_lo = 0.05, double n_hi = 0.95) {
    std::uniform_real_distribution<double> un(n_lo, n_hi);
    std::uniform_real_distribution<double> ut(theta_lo, theta_hi);
    MeanFieldState s;
    s.n.resize(spec.num_sites);
    s.kinetic.resize(spec.num_sites);
    for (int x = 0; x < spec.num_sites; ++x) {
        s.n[x] = un(rng);
        s.kinetic[x] = kinetic_from_theta(s.n[x], ut(rng), spec.energy_quantum);
    }
    return s;
}

/// Random quantized potential: integer steps in [-max_step, max_step].
inline std::vector<double> random_quantized_potential(int sites, double eps,
                                                      std::mt19937& rng, int max_step) {
    std::uniform_int_distribution<int> uw(-max_step, max_step);
    std::vector<double> v(sites, 0.0);
    for (int b = 0; b + 1 < sites; ++b)
        v[b + 1] = v[b] + eps * uw(rng);
    return v;
}

inline double rel_diff(double a, double b) {
    const double scale = std::max({std::abs(a), std::abs(b), 1e-300});
    return std::abs(a - b) / scale;
}

} // namespace soretsim::testing
