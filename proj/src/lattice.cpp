#include "soretsim/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace soretsim {

namespace {

constexpr double kGrace = 1e-12;

bool stay_probability_ok(double two_lambda_eps, long k) {
    // Stay-as-you-were probability 1 - 2*lambda*eps*(k+1) must be >= 0.
    // The relative slack absorbs representation noise in 2*lambda*eps
    // (e.g. nominal 0.01 stored as 0.010000000000000002).
    return two_lambda_eps * static_cast<double>(k + 1) <= 1.0 + 1e-12;
}

} // namespace

int compute_k_max(double hop_rate, double eps) {
    if (!(hop_rate > 0.0) || !(eps > 0.0))
        raise(ErrorCode::InvalidRates, "hop rate and energy quantum must be positive");
    const double two_le = 2.0 * hop_rate * eps;
    if (!(two_le < 1.0))
        raise(ErrorCode::InvalidRates,
              "hop cutoff requires 2*lambda*epsilon < 1, got " + std::to_string(two_le));
    if (1.0 / two_le > 1e8)
        raise(ErrorCode::TooLarge, "hop cutoff above 1e8 quanta; rates too small");
    long k = std::max(0L, static_cast<long>(std::floor(1.0 / two_le)) - 1L);
    while (stay_probability_ok(two_le, k + 1))
        ++k;
    while (k > 0 && !stay_probability_ok(two_le, k))
        --k;
    return static_cast<int>(k);
}

LatticeSpec LatticeSpec::create(int num_sites, double spacing, double energy_quantum,
                                double hop_rate, std::vector<double> potential) {
    if (num_sites < 2)
        raise(ErrorCode::InvalidArgument, "lattice needs at least 2 sites");
    if (!(spacing > 0.0) || !(energy_quantum > 0.0) || !(hop_rate > 0.0))
        raise(ErrorCode::InvalidArgument, "spacing, energy quantum and hop rate must be positive");
    if (!potential.empty() && static_cast<int>(potential.size()) != num_sites)
        raise(ErrorCode::InvalidArgument, "potential size does not match num_sites");

    LatticeSpec spec;
    spec.num_sites = num_sites;
    spec.spacing = spacing;
    spec.energy_quantum = energy_quantum;
    spec.hop_rate = hop_rate;
    spec.gamma = energy_quantum / spacing;
    spec.k_max = compute_k_max(hop_rate, energy_quantum);
    if (spec.k_max < 1)
        raise(ErrorCode::InvalidRates,
              "need k_max >= 1, i.e. 2*lambda*epsilon <= 1/2");

    if (potential.empty())
        potential.assign(num_sites, 0.0);

    // Quantize: every bond difference becomes an exact integer multiple of eps.
    spec.steps.resize(num_sites - 1);
    spec.potential.resize(num_sites);
    spec.potential[0] = potential[0];
    double max_err = 0.0;
    for (int b = 0; b + 1 < num_sites; ++b) {
        const double diff = potential[b + 1] - potential[b];
        const double w_real = diff / energy_quantum;
        if (!(std::abs(w_real) < 1e9))
            raise(ErrorCode::InvalidArgument, "potential step overflows integer quantization");
        const long w = std::lround(w_real);
        spec.steps[b] = static_cast<int>(w);
        spec.potential[b + 1] = spec.potential[b] + energy_quantum * static_cast<double>(w);
        max_err = std::max(max_err, std::abs(spec.potential[b + 1] - potential[b + 1]));
    }
    spec.max_quantization_error = max_err;
    return spec;
}

void MeanFieldState::validate(const LatticeSpec& spec) const {
    if (static_cast<int>(n.size()) != spec.num_sites ||
        static_cast<int>(kinetic.size()) != spec.num_sites)
        raise(ErrorCode::InvalidState, "state arrays do not match lattice size");
    for (int x = 0; x < spec.num_sites; ++x) {
        if (!(n[x] >= -kGrace) || !(n[x] <= 1.0 + kGrace) || std::isnan(n[x]))
            raise(ErrorCode::InvalidState,
                  "occupation out of [0,1] at site " + std::to_string(x));
        if (!(kinetic[x] >= -kGrace) || std::isnan(kinetic[x]))
            raise(ErrorCode::InvalidState,
                  "negative kinetic energy at site " + std::to_string(x));
        if (n[x] <= kGrace && kinetic[x] > kGrace)
            raise(ErrorCode::InvalidState,
                  "empty site " + std::to_string(x) + " carries kinetic energy");
    }
}

SiteClosure closure_from_means(double n, double K, double eps) {
    if (!(eps > 0.0))
        raise(ErrorCode::InvalidArgument, "energy quantum must be positive");
    if (!(n > 0.0) || !(K > 0.0))
        raise(ErrorCode::EmptyOrColdSite, "closure undefined for n = 0 or K = 0");
    if (n > 1.0 + kGrace)
        raise(ErrorCode::InvalidState, "occupation above 1");
    SiteClosure c;
    c.beta = std::log1p(eps * n / K) / eps;
    c.theta = 1.0 / c.beta;
    c.Z = 1.0 + K / (eps * n);
    return c;
}

double kinetic_from_theta(double n, double theta, double eps) {
    if (!(theta > 0.0))
        raise(ErrorCode::InvalidArgument, "temperature must be positive");
    if (n <= 0.0)
        return 0.0;
    return eps * n / std::expm1(eps / theta);
}

namespace detail {

double boltzmann_ratio(double n, double K, double eps) {
    if (!(n > 0.0) || !(K > 0.0))
        return 0.0; // empty or cold: only k = 0 populated
    return K / (K + eps * n);
}

double truncated_partition(double r, int k_cap) {
    double acc = 0.0;
    double rk = 1.0;
    for (int k = 0; k <= k_cap; ++k) {
        acc += rk;
        rk *= r;
    }
    return acc;
}

// Closed forms of sum_{k>=a} k^m r^k for m = 0, 1, 2, with 1-r passed
// separately because the callers know it exactly.
double geo0(double r, double omr, int a) {
    return std::pow(r, a) / omr;
}
double geo1(double r, double omr, int a) {
    const double ra = std::pow(r, a);
    return ra * (static_cast<double>(a) * omr + r) / (omr * omr);
}
double geo2(double r, double omr, int a) {
    const double ra = std::pow(r, a);
    const double da = static_cast<double>(a);
    return ra * (da * da * omr * omr + 2.0 * da * r * omr + r * (1.0 + r)) /
           (omr * omr * omr);
}

} // namespace detail

double weighted_tail_sums(double beta, double eps, int a, int shift, long k_cap, int moment) {
    if (a < 0)
        raise(ErrorCode::InvalidArgument, "tail sum needs a >= 0");
    if (moment != 0 && moment != 1)
        raise(ErrorCode::InvalidArgument, "moment must be 0 or 1");
    if (!(eps > 0.0))
        raise(ErrorCode::InvalidArgument, "energy quantum must be positive");

    const double r = std::isinf(beta) ? 0.0 : std::exp(-eps * beta);
    if (k_cap != kInfiniteCap) {
        if (k_cap < a)
            return 0.0;
        double acc = 0.0;
        double rk = std::pow(r, a); // 0^0 = 1 covers the frozen distribution
        for (long k = a; k <= k_cap; ++k) {
            const double weight = static_cast<double>(k + 1 - shift);
            acc += (moment == 0 ? weight : weight * static_cast<double>(k)) * rk;
            rk *= r;
        }
        return acc;
    }

    if (r == 0.0) { // beta -> infinity: only k = a survives if r^a != 0, i.e. a = 0
        if (a > 0)
            return 0.0;
        const double weight = static_cast<double>(1 - shift);
        return moment == 0 ? weight : 0.0;
    }
    if (!(r < 1.0))
        raise(ErrorCode::InvalidState, "infinite tail sum requires beta > 0");
    const double omr = -std::expm1(-eps * beta);
    const double c = static_cast<double>(1 - shift);
    if (moment == 0)
        return detail::geo1(r, omr, a) + c * detail::geo0(r, omr, a);
    return detail::geo2(r, omr, a) + c * detail::geo1(r, omr, a);
}

namespace {

// Per-bond sums over the admissible swaps. Index kb is the kinetic quantum
// at the right-hand site of the pair; the left-hand one is ka = kb + w.
// Returns {S0L, S1L, S0R, S1R}:
//   S0L = sum (kb+1) qL(kb+w)   S1L = sum kb (kb+1) qL(kb+w)
//   S0R = sum (kb+1) qR(kb)     S1R = sum kb (kb+1) qR(kb)
// where qL/qR are the per-site occupation-number weights.
struct BondSums {
    double s0l = 0.0, s1l = 0.0, s0r = 0.0, s1r = 0.0;
};

BondSums finite_bond_sums(double r_l, double inv_part_l, double r_r, double inv_part_r,
                          int w, int k_cap) {
    BondSums s;
    const int lo = std::max(-w, 0);
    const int hi = k_cap - std::max(w, 0);
    if (hi < lo)
        return s;
    double pl = (lo + w == 0) ? 1.0 : std::pow(r_l, lo + w);
    double pr = (lo == 0) ? 1.0 : std::pow(r_r, lo);
    for (int kb = lo; kb <= hi; ++kb) {
        const double weight = static_cast<double>(kb + 1);
        s.s0l += weight * pl;
        s.s1l += weight * static_cast<double>(kb) * pl;
        s.s0r += weight * pr;
        s.s1r += weight * static_cast<double>(kb) * pr;
        pl *= r_l;
        pr *= r_r;
    }
    s.s0l *= inv_part_l;
    s.s1l *= inv_part_l;
    s.s0r *= inv_part_r;
    s.s1r *= inv_part_r;
    return s;
}

// Infinite-mode weights are the full geometric distribution (1-r) r^k.
// The left site's sums are rewritten over its own exponent j = kb + w
// (j >= max(w,0)) so no negative powers of r appear:
//   sum (kb+1) qL = sum_{j>=a} (j+1-w) (1-r) r^j
//   sum kb(kb+1) qL = sum_{j>=a} [j^2 + (1-2w) j + w(w-1)] (1-r) r^j
BondSums infinite_bond_sums(double r_l, double omr_l, double r_r, double omr_r, int w) {
    BondSums s;
    const int a = std::max(w, 0);
    const double dw = static_cast<double>(w);
    if (r_l == 0.0) {
        // Frozen site: only j = 0, admissible iff a = 0 (downhill or flat bond).
        if (a == 0) {
            s.s0l = 1.0 - dw;
            s.s1l = -dw * (1.0 - dw);
        }
    } else {
        const double g0 = detail::geo0(r_l, omr_l, a);
        const double g1 = detail::geo1(r_l, omr_l, a);
        const double g2 = detail::geo2(r_l, omr_l, a);
        s.s0l = omr_l * (g1 + (1.0 - dw) * g0);
        s.s1l = omr_l * (g2 + (1.0 - 2.0 * dw) * g1 + dw * (dw - 1.0) * g0);
    }
    const int lo = std::max(-w, 0);
    if (r_r == 0.0) {
        if (lo == 0)
            s.s0r = 1.0; // kb = 0 only; s1r stays 0
    } else {
        const double g0 = detail::geo0(r_r, omr_r, lo);
        const double g1 = detail::geo1(r_r, omr_r, lo);
        const double g2 = detail::geo2(r_r, omr_r, lo);
        s.s0r = omr_r * (g1 + g0);
        s.s1r = omr_r * (g2 + g1);
    }
    return s;
}

} // namespace

StepResult step_mean_field(const MeanFieldState& state_in, const LatticeSpec& spec,
                           const StepOptions& options) {
    state_in.validate(spec);
    const int sites = spec.num_sites;
    const int bonds = spec.bonds();
    const double eps = spec.energy_quantum;
    const double lambda_eps = spec.hop_rate * eps;
    const int k_cap = options.k_cap >= 0 ? options.k_cap : spec.k_max;

    // Working copy with the 1e-12 grace snapped away.
    MeanFieldState s = state_in;
    for (int x = 0; x < sites; ++x) {
        s.n[x] = std::clamp(s.n[x], 0.0, 1.0);
        s.kinetic[x] = std::max(s.kinetic[x], 0.0);
        if (s.n[x] == 0.0)
            s.kinetic[x] = 0.0;
    }

    std::vector<double> r(sites), inv_part(sites), omr(sites);
    for (int x = 0; x < sites; ++x) {
        r[x] = detail::boltzmann_ratio(s.n[x], s.kinetic[x], eps);
        if (options.mode == SumMode::Finite)
            inv_part[x] = 1.0 / detail::truncated_partition(r[x], k_cap);
        else
            omr[x] = (r[x] == 0.0) ? 1.0
                                   : eps * s.n[x] / (s.kinetic[x] + eps * s.n[x]);
    }

    std::vector<double> dn(sites, 0.0), dK(sites, 0.0);
    StepResult result;
    if (options.collect_fluxes) {
        result.particle_flux.assign(bonds, 0.0);
        result.energy_flux.assign(bonds, 0.0);
    }

    for (int b = 0; b < bonds; ++b) {
        const double nl = s.n[b], nr = s.n[b + 1];
        if (nl == 0.0 && nr == 0.0)
            continue;
        const int w = spec.steps[b];
        const BondSums sums =
            options.mode == SumMode::Finite
                ? finite_bond_sums(r[b], inv_part[b], r[b + 1], inv_part[b + 1], w, k_cap)
                : infinite_bond_sums(r[b], omr[b], r[b + 1], omr[b + 1], w);

        const double right_hops = lambda_eps * nl * (1.0 - nr); // weight of left->right swaps
        const double left_hops = lambda_eps * nr * (1.0 - nl);
        const double flux_n = right_hops * sums.s0l - left_hops * sums.s0r;
        const double flux_k = right_hops * sums.s1l - left_hops * sums.s1r;

        dn[b] -= flux_n;
        dn[b + 1] += flux_n;
        // A particle crossing rightward trades eps*w of kinetic energy for
        // potential, so the kinetic books balance exactly: ka = kb + w.
        dK[b] -= eps * (flux_k + static_cast<double>(w) * flux_n);
        dK[b + 1] += eps * flux_k;

        if (options.collect_fluxes) {
            result.particle_flux[b] = flux_n;
            result.energy_flux[b] = eps * flux_k + spec.potential[b + 1] * flux_n;
        }
    }

    MeanFieldState out;
    out.n.resize(sites);
    out.kinetic.resize(sites);
    for (int x = 0; x < sites; ++x) {
        double nn = s.n[x] + dn[x];
        if (nn < 0.0) {
            if (nn < -kGrace)
                raise(ErrorCode::StepTooLarge,
                      "occupation fell below 0 at site " + std::to_string(x) +
                          " (lambda*eps too large for this state)");
            nn = 0.0;
        } else if (nn > 1.0) {
            if (nn > 1.0 + kGrace)
                raise(ErrorCode::StepTooLarge,
                      "occupation exceeded 1 at site " + std::to_string(x) +
                          " (lambda*eps too large for this state)");
            nn = 1.0;
        }
        double kk = s.kinetic[x] + dK[x];
        if (kk < 0.0) {
            if (kk < -kGrace)
                raise(ErrorCode::StepTooLarge,
                      "kinetic energy fell below 0 at site " + std::to_string(x));
            kk = 0.0;
        }
        if (nn == 0.0)
            kk = 0.0;
        out.n[x] = nn;
        out.kinetic[x] = kk;
    }
    result.state = std::move(out);
    return result;
}

Totals totals(const MeanFieldState& state, const LatticeSpec& spec) {
    state.validate(spec);
    Totals t{0.0, 0.0};
    for (int x = 0; x < spec.num_sites; ++x) {
        t.particles += state.n[x];
        t.energy += state.kinetic[x] + spec.potential[x] * state.n[x];
    }
    return t;
}

const char* error_code_name(ErrorCode code) {
    switch (code) {
    case ErrorCode::InvalidArgument: return "invalid-argument";
    case ErrorCode::InvalidRates: return "invalid-rates";
    case ErrorCode::InvalidState: return "invalid-state";
    case ErrorCode::EmptyOrColdSite: return "empty-or-cold-site";
    case ErrorCode::StepTooLarge: return "step-too-large";
    case ErrorCode::TooLarge: return "too-large";
    case ErrorCode::UnstableStep: return "unstable-step";
    case ErrorCode::BoundsViolated: return "bounds-violated";
    case ErrorCode::SingularForce: return "singular-force";
    case ErrorCode::SingularCoord: return "singular-coord";
    case ErrorCode::ConvergenceFailure: return "convergence-failure";
    case ErrorCode::ConservationViolated: return "conservation-violated";
    case ErrorCode::EntropyDecreased: return "entropy-decreased";
    case ErrorCode::OracleMismatch: return "oracle-mismatch";
    case ErrorCode::ConfigInvalid: return "config-invalid";
    case ErrorCode::Io: return "io-error";
    case ErrorCode::Internal: return "internal";
    }
    return "unknown";
}

} // namespace soretsim
