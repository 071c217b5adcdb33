#include "soretsim/oracle.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>

namespace soretsim {
namespace oracle {

namespace {

constexpr long kEnumerationGuard = 10'000'000;

long checked_dimension(int sites, int k_cap) {
    long dim = 1;
    const long base = static_cast<long>(k_cap) + 2;
    for (int x = 0; x < sites; ++x) {
        if (dim > kEnumerationGuard / base + 1)
            raise(ErrorCode::TooLarge, "sample space exceeds the enumeration guard");
        dim *= base;
    }
    if (dim > kEnumerationGuard)
        raise(ErrorCode::TooLarge, "sample space exceeds the enumeration guard");
    return dim;
}

// Integer offsets u_x = (V_x - V_0)/eps; exact because the lattice
// constructor quantizes V.
std::vector<long long> potential_offsets(const LatticeSpec& spec) {
    std::vector<long long> u(spec.num_sites, 0);
    for (int b = 0; b < spec.bonds(); ++b)
        u[b + 1] = u[b] + spec.steps[b];
    return u;
}

} // namespace

Configuration SampleSpace::configuration(long index) const {
    Configuration c(sites);
    const long base = static_cast<long>(k_cap) + 2;
    for (int x = sites - 1; x >= 0; --x) {
        c[x] = static_cast<int>(index % base) - 1;
        index /= base;
    }
    return c;
}

long SampleSpace::index(const Configuration& config) const {
    const long base = static_cast<long>(k_cap) + 2;
    long idx = 0;
    for (int x = 0; x < sites; ++x)
        idx = idx * base + (config[x] + 1);
    return idx;
}

SampleSpace enumerate_space(int sites, int k_cap) {
    if (k_cap < 0 || sites < 1)
        raise(ErrorCode::InvalidArgument, "need sites >= 1 and k_cap >= 0");
    SampleSpace space;
    space.sites = sites;
    space.k_cap = k_cap;
    space.dim = checked_dimension(sites, k_cap);
    return space;
}

SampleSpace enumerate_space(const LatticeSpec& spec, int k_cap) {
    return enumerate_space(spec.num_sites, k_cap);
}

std::vector<Configuration> enumerate(const LatticeSpec& spec, int k_cap) {
    const SampleSpace space = enumerate_space(spec, k_cap);
    std::vector<Configuration> configs;
    configs.reserve(space.dim);
    for (long i = 0; i < space.dim; ++i)
        configs.push_back(space.configuration(i));
    return configs;
}

void ExactDistribution::validate() const {
    double total = 0.0;
    for (double v : p) {
        if (v < -1e-12 || std::isnan(v))
            raise(ErrorCode::InvalidState, "distribution has a negative entry");
        total += v;
    }
    if (std::abs(total - 1.0) > 1e-12)
        raise(ErrorCode::InvalidState, "distribution does not sum to 1");
}

TransitionMatrix build_T(const LatticeSpec& spec, int k_cap) {
    const SampleSpace space = enumerate_space(spec, k_cap);
    const double lambda_eps = spec.hop_rate * spec.energy_quantum;
    if (2.0 * lambda_eps * static_cast<double>(k_cap + 1) > 1.0)
        raise(ErrorCode::InvalidRates,
              "need 2*lambda*eps*(k_cap+1) <= 1 so stay probabilities are nonnegative");
    if (space.dim > 5000)
        raise(ErrorCode::TooLarge, "dense transition matrix would be too large");

    TransitionMatrix T;
    T.dim = space.dim;
    T.sites = space.sites;
    T.k_cap = k_cap;
    T.m.assign(space.dim * space.dim, 0.0);
    T.particle_label.resize(space.dim);
    T.energy_label.resize(space.dim);

    const std::vector<long long> offsets = potential_offsets(spec);

    for (long i = 0; i < space.dim; ++i) {
        Configuration c = space.configuration(i);
        int particles = 0;
        long long energy = 0;
        for (int x = 0; x < space.sites; ++x) {
            if (c[x] >= 0) {
                ++particles;
                energy += c[x] + offsets[x];
            }
        }
        T.particle_label[i] = particles;
        T.energy_label[i] = energy;

        // Couple each "particle left of a hole" pattern with its swap.
        // The mirrored pattern is reached from the partner row, so every
        // unordered pair is written exactly twice, symmetrically.
        for (int b = 0; b < spec.bonds(); ++b) {
            const int ka = c[b];
            if (ka < 0 || c[b + 1] != -1)
                continue;
            const int kb = ka - spec.steps[b];
            if (kb < 0 || kb > k_cap)
                continue;
            Configuration swapped = c;
            swapped[b] = -1;
            swapped[b + 1] = kb;
            const long j = space.index(swapped);
            const double rate = lambda_eps * static_cast<double>(kb + 1);
            T.m[i * space.dim + j] = rate;
            T.m[j * space.dim + i] = rate;
        }
    }

    double min_diag = 1.0;
    for (long i = 0; i < space.dim; ++i) {
        double off = 0.0;
        for (long j = 0; j < space.dim; ++j)
            if (j != i)
                off += T.m[i * space.dim + j];
        const double diag = 1.0 - off;
        T.m[i * space.dim + i] = diag;
        min_diag = std::min(min_diag, diag);
    }
    T.min_diagonal = min_diag;
    return T;
}

ExactDistribution evolve_exact(const ExactDistribution& p, const TransitionMatrix& T,
                               int steps) {
    if (static_cast<long>(p.p.size()) != T.dim)
        raise(ErrorCode::InvalidState, "distribution dimension does not match T");
    if (steps < 0)
        raise(ErrorCode::InvalidArgument, "steps must be >= 0");
    ExactDistribution out = p;
    std::vector<double> next(T.dim);
    for (int s = 0; s < steps; ++s) {
        for (long i = 0; i < T.dim; ++i) {
            double acc = 0.0;
            const double* row = &T.m[i * T.dim];
            for (long j = 0; j < T.dim; ++j)
                acc += row[j] * out.p[j];
            next[i] = acc;
        }
        out.p.swap(next);
    }
    return out;
}

MeanFieldState marginals(const ExactDistribution& p, const SampleSpace& space,
                         const LatticeSpec& spec) {
    if (static_cast<long>(p.p.size()) != space.dim)
        raise(ErrorCode::InvalidState, "distribution dimension does not match space");
    MeanFieldState s;
    s.n.assign(space.sites, 0.0);
    s.kinetic.assign(space.sites, 0.0);
    for (long i = 0; i < space.dim; ++i) {
        const double w = p.p[i];
        if (w == 0.0)
            continue;
        Configuration c = space.configuration(i);
        for (int x = 0; x < space.sites; ++x) {
            if (c[x] >= 0) {
                s.n[x] += w;
                s.kinetic[x] += w * spec.energy_quantum * static_cast<double>(c[x]);
            }
        }
    }
    return s;
}

ExactDistribution project_Q(const MeanFieldState& state, const LatticeSpec& spec, int k_cap) {
    const SampleSpace space = enumerate_space(spec, k_cap);
    state.validate(spec);

    // Site factors: f(hole) = 1-n, f(k) = n r^k / sum_{k<=k_cap} r^k.
    std::vector<std::vector<double>> factor(space.sites);
    for (int x = 0; x < space.sites; ++x) {
        factor[x].assign(k_cap + 2, 0.0);
        const double n = std::clamp(state.n[x], 0.0, 1.0);
        const double r = detail::boltzmann_ratio(n, std::max(state.kinetic[x], 0.0),
                                                 spec.energy_quantum);
        const double inv_part = 1.0 / detail::truncated_partition(r, k_cap);
        factor[x][0] = 1.0 - n;
        double rk = 1.0;
        for (int k = 0; k <= k_cap; ++k) {
            factor[x][k + 1] = n * rk * inv_part;
            rk *= r;
        }
    }

    ExactDistribution dist;
    dist.p.assign(space.dim, 0.0);
    for (long i = 0; i < space.dim; ++i) {
        Configuration c = space.configuration(i);
        double w = 1.0;
        for (int x = 0; x < space.sites && w != 0.0; ++x)
            w *= factor[x][c[x] + 1];
        dist.p[i] = w;
    }
    return dist;
}

double shannon_entropy(const ExactDistribution& p) {
    double s = 0.0;
    for (double v : p.p)
        if (v > 0.0)
            s -= v * std::log(v);
    return s;
}

OracleCheck compare_with_mean_field(const MeanFieldState& state, const LatticeSpec& spec,
                                    int k_cap) {
    const SampleSpace space = enumerate_space(spec, k_cap);
    const TransitionMatrix T = build_T(spec, k_cap);
    const ExactDistribution p0 = project_Q(state, spec, k_cap);
    const MeanFieldState base = marginals(p0, space, spec);
    const ExactDistribution p1 = evolve_exact(p0, T, 1);
    const MeanFieldState exact = marginals(p1, space, spec);

    StepOptions options;
    options.mode = SumMode::Finite;
    options.k_cap = k_cap;
    const MeanFieldState mf = step_mean_field(state, spec, options).state;

    OracleCheck check;
    for (int x = 0; x < spec.num_sites; ++x) {
        check.max_occupation_error =
            std::max(check.max_occupation_error, std::abs(exact.n[x] - mf.n[x]));
        const double oracle_dk = exact.kinetic[x] - base.kinetic[x];
        const double mf_dk = mf.kinetic[x] - state.kinetic[x];
        check.max_kinetic_update_error =
            std::max(check.max_kinetic_update_error, std::abs(oracle_dk - mf_dk));
        check.baseline_kinetic_tail =
            std::max(check.baseline_kinetic_tail,
                     std::abs(base.kinetic[x] - state.kinetic[x]));
    }
    check.max_error = std::max(check.max_occupation_error, check.max_kinetic_update_error);
    return check;
}

void dump_matrix_csv(const TransitionMatrix& T, const std::string& path) {
    std::ofstream out(path);
    if (!out)
        raise(ErrorCode::Io, "cannot open " + path);
    char buf[32];
    for (long i = 0; i < T.dim; ++i) {
        for (long j = 0; j < T.dim; ++j) {
            std::snprintf(buf, sizeof buf, "%.17g", T.at(i, j));
            out << buf << (j + 1 < T.dim ? "," : "\n");
        }
    }
}

void dump_distribution_csv(const ExactDistribution& p, const SampleSpace& space,
                           const std::string& path) {
    std::ofstream out(path);
    if (!out)
        raise(ErrorCode::Io, "cannot open " + path);
    out << "index,configuration,probability\n";
    char buf[32];
    for (long i = 0; i < space.dim; ++i) {
        Configuration c = space.configuration(i);
        out << i << ",\"";
        for (int x = 0; x < space.sites; ++x) {
            if (x)
                out << ' ';
            if (c[x] < 0)
                out << '.';
            else
                out << c[x];
        }
        std::snprintf(buf, sizeof buf, "%.17g", p.p[i]);
        out << "\"," << buf << "\n";
    }
}

} // namespace oracle
} // namespace soretsim
