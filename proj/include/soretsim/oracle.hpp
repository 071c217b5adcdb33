#pragma once

#include <string>
#include <vector>

#include "soretsim/lattice.hpp"

namespace soretsim {
namespace oracle {

/// One microstate: per site -1 for a hole, k >= 0 for a particle with
/// kinetic energy k quanta.
using Configuration = std::vector<int>;

/// Enumerated sample space over a lattice, truncated at k_cap quanta.
///
/// Canonical order is lexicographic by site with hole < k=0 < k=1 < ...,
/// site 0 the most significant digit; index() and configuration() convert
/// both ways.
struct SampleSpace {
    int sites = 0;
    int k_cap = 0;
    long dim = 0; // (k_cap + 2)^sites

    Configuration configuration(long index) const;
    long index(const Configuration& config) const;
};

/// Builds the sample space; throws TooLarge above the 1e7-configuration guard.
SampleSpace enumerate_space(int sites, int k_cap);
SampleSpace enumerate_space(const LatticeSpec& spec, int k_cap);

/// Explicit configuration list in canonical order (small spaces only).
std::vector<Configuration> enumerate(const LatticeSpec& spec, int k_cap);

/// Dense probability vector over the canonical enumeration.
struct ExactDistribution {
    std::vector<double> p;

    void validate() const; // entries >= -1e-12, total within 1e-12 of 1
};

/// The one-step bistochastic transition matrix. Off-diagonal entries couple
/// configurations that differ by one nearest-neighbour particle-hole swap
/// with the energy-balancing kinetic shift; each such pair carries
/// lambda*eps*(kb+1) with kb the kinetic quantum number on the
/// higher-potential end of the swap (spare energy + 1, both bond
/// orientations averaged). The diagonal restores row sums to one.
struct TransitionMatrix {
    long dim = 0;
    int sites = 0;
    int k_cap = 0;
    std::vector<double> m;            // row-major dim*dim
    std::vector<int> particle_label;  // N per configuration
    std::vector<long long> energy_label; // integer energy key: sum over occupied of (k + V/eps offset)
    double min_diagonal = 0.0;

    double at(long i, long j) const { return m[i * dim + j]; }
    /// True when all entries are nonnegative (row/column sums are 1 by
    /// construction). Entropy arguments need this; configurations able to
    /// make several simultaneous swaps can push a diagonal negative even
    /// under the pairwise bound 2*lambda*eps*(k_cap+1) <= 1.
    bool is_doubly_stochastic(double tol = 1e-12) const { return min_diagonal >= -tol; }
};

/// Assembles T. Requires 2*lambda*eps*(k_cap+1) <= 1 (InvalidRates otherwise).
TransitionMatrix build_T(const LatticeSpec& spec, int k_cap);

/// p' = T^steps p. Throws on dimension mismatch.
ExactDistribution evolve_exact(const ExactDistribution& p, const TransitionMatrix& T, int steps);

/// Site marginals (n_x, K_x) of a distribution.
MeanFieldState marginals(const ExactDistribution& p, const SampleSpace& space,
                         const LatticeSpec& spec);

/// Product of per-site grand-canonical factors with the geometric weights
/// renormalized over k <= k_cap (the LTE projection Q restricted to the
/// enumerated space).
ExactDistribution project_Q(const MeanFieldState& state, const LatticeSpec& spec, int k_cap);

double shannon_entropy(const ExactDistribution& p);

struct OracleCheck {
    /// max |marginals(T Q s).n - step(s).n|; Q preserves occupations exactly.
    double max_occupation_error = 0.0;
    /// max |(marginals(T Q s).K - marginals(Q s).K) - (step(s).K - s.K)|:
    /// the kinetic update of T on the product state vs the one-step sums.
    double max_kinetic_update_error = 0.0;
    /// max |marginals(Q s).K - s.K|: the k_cap truncation tail of the
    /// projection itself (bounded by ~exp(-eps*beta*(k_cap+1)), not by the
    /// update algebra). The direct kinetic comparison inherits this offset.
    double baseline_kinetic_tail = 0.0;
    double max_error = 0.0; // max of the two update errors
};

/// The defining cross-check: one exact step of T on the projected product
/// state vs one mean-field step capped at the same k_cap.
OracleCheck compare_with_mean_field(const MeanFieldState& state, const LatticeSpec& spec,
                                    int k_cap);

/// Debug dumps in canonical enumeration order.
void dump_matrix_csv(const TransitionMatrix& T, const std::string& path);
void dump_distribution_csv(const ExactDistribution& p, const SampleSpace& space,
                           const std::string& path);

} // namespace oracle
} // namespace soretsim
