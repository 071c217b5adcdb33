#pragma once

#include <vector>

#include "soretsim/errors.hpp"

namespace soretsim {

/// Which closure of the per-site kinetic sums to use.
///
/// Finite caps every sum at the hop cutoff k_max and renormalizes the
/// per-site occupation-number weights over k <= k_max; this is the stable,
/// entropy-increasing form of the dynamics and the one the exact oracle
/// reproduces term by term. Infinite uses the closed-form geometric sums;
/// it exists to mirror the continuum limit and for cross-checks.
enum class SumMode { Finite, Infinite };

/// Geometry and rates of the 1-D hard-core hopping lattice.
///
/// Sites sit at x_i = (i + 1/2) * spacing. The potential is quantized at
/// construction: every bond difference V[b+1] - V[b] is rounded to an exact
/// integer multiple of the energy quantum and the rounded potential is the
/// one stored; max_quantization_error reports the largest adjustment made.
struct LatticeSpec {
    int num_sites = 0;
    double spacing = 0.0;        // l
    double energy_quantum = 0.0; // eps
    double hop_rate = 0.0;       // lambda
    double gamma = 0.0;          // eps / l
    std::vector<double> potential; // quantized, one per site
    std::vector<int> steps;        // per bond: (V[b+1] - V[b]) / eps
    int k_max = 0;                 // largest k with 2*lambda*eps*(k+1) <= 1
    double max_quantization_error = 0.0;

    /// Builds a spec, quantizing `potential` (empty means V = 0).
    /// Requires num_sites >= 2, positive scales, and k_max >= 1
    /// (i.e. 2*lambda*eps <= 1/2).
    static LatticeSpec create(int num_sites, double spacing, double energy_quantum,
                              double hop_rate, std::vector<double> potential = {});

    int bonds() const { return num_sites - 1; }
    double time_step() const { return spacing * spacing; } // diffusion scaling dt = l^2
};

/// Mean occupation and mean kinetic energy per site. The primal variables of
/// the mean-field dynamics; temperature and fugacity are derived on demand.
struct MeanFieldState {
    std::vector<double> n;       // in [0, 1]
    std::vector<double> kinetic; // K, >= 0; K = 0 wherever n = 0

    int num_sites() const { return static_cast<int>(n.size()); }

    /// Throws InvalidState unless all invariants hold (1e-12 grace).
    void validate(const LatticeSpec& spec) const;
};

/// Per-site grand-canonical closure derived from (n, K).
struct SiteClosure {
    double beta;  // 1/energy
    double theta; // 1/beta
    double Z;     // 1 + K/(eps*n)
};

/// Inverts the mean kinetic energy relation exp(eps*beta) = 1 + eps*n/K.
/// Requires 0 < n <= 1 and K > 0; throws EmptyOrColdSite otherwise
/// (callers handle those sites as the beta -> infinity limit).
SiteClosure closure_from_means(double n, double K, double eps);

/// Mean kinetic energy of an occupied site at temperature theta:
/// K = eps*n / (exp(eps/theta) - 1).
double kinetic_from_theta(double n, double theta, double eps);

/// Largest integer k such that 2*lambda*eps*(k+1) <= 1. Requires
/// 2*lambda*eps < 1; throws InvalidRates otherwise.
int compute_k_max(double hop_rate, double eps);

constexpr long kInfiniteCap = -1;

/// The kinetic sums appearing in the one-step updates:
///   moment 0:  sum_{k>=a} (k+1-shift) exp(-eps*k*beta)
///   moment 1:  sum_{k>=a} k (k+1-shift) exp(-eps*k*beta)
/// k_cap = kInfiniteCap selects the closed-form geometric series; otherwise
/// the sum runs over a..k_cap (empty ranges return 0). beta may be +inf.
double weighted_tail_sums(double beta, double eps, int a, int shift, long k_cap, int moment);

struct StepOptions {
    SumMode mode = SumMode::Finite;
    /// Cap for the finite sums; -1 means the spec's k_max. Tests use this to
    /// align the step with an oracle enumerated at a smaller cap.
    int k_cap = -1;
    bool collect_fluxes = false;
};

struct StepResult {
    MeanFieldState state;
    /// Net rightward particle transfer per bond in one step (collect_fluxes).
    std::vector<double> particle_flux;
    /// Net rightward energy transfer per bond in one step, potential included:
    /// energy_flux[b] = eps * (kinetic arriving at b+1) + V[b+1] * particle_flux[b].
    std::vector<double> energy_flux;
};

/// One step of the mean-field dynamics: apply the bond transition sums to
/// (n, K) at every site, then re-close. Boundaries are no-flux. Bond terms
/// are accumulated left to right so runs are bit-reproducible.
StepResult step_mean_field(const MeanFieldState& state, const LatticeSpec& spec,
                           const StepOptions& options = {});

struct Totals {
    double particles;
    double energy; // sum of K + V*n
};

Totals totals(const MeanFieldState& state, const LatticeSpec& spec);

namespace detail {

/// exp(-eps*beta) computed as K/(K + eps*n); exact in the means, no logs.
double boltzmann_ratio(double n, double K, double eps);

/// sum_{k=0}^{k_cap} r^k by direct accumulation (shared with the oracle's
/// site factors so both paths normalize identically).
double truncated_partition(double r, int k_cap);

} // namespace detail

} // namespace soretsim
