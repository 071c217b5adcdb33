#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "soretsim/lattice.hpp"

namespace soretsim {

enum class RunMode { Discrete, Continuum, OracleCheck, Experiment };

enum class ProfileKind { Constant, Linear, Gaussian, Table };

/// Initial-field profile over the unit interval (x is the cell-center
/// fraction). Tables are given per site/cell.
struct Profile {
    ProfileKind kind = ProfileKind::Constant;
    double value = 0.0;                // constant
    double lo = 0.0, hi = 0.0;         // linear endpoints
    double base = 0.0, amp = 0.0;      // gaussian
    double center = 0.5, width = 0.1;  // gaussian
    std::vector<double> values;        // table

    bool operator==(const Profile&) const = default;

    /// Values at (i + 1/2)/count; Table requires values.size() == count.
    std::vector<double> materialize(int count) const;
};

enum class PotentialKind { Zero, Linear, Table };

struct PotentialSpec {
    PotentialKind kind = PotentialKind::Zero;
    double slope = 0.0;           // Linear: V = slope * x (physical coordinate)
    std::vector<double> values;   // Table: one per site/cell

    bool operator==(const PotentialSpec&) const = default;

    std::vector<double> materialize(int count, double spacing) const;
};

struct RunConfig {
    RunMode mode = RunMode::Discrete;
    long steps = 100;
    int output_every = 10;
    SumMode sum_mode = SumMode::Finite;
    std::string out_dir = "out";

    // [lattice]
    int sites = 64;
    double spacing = 0.015625;
    double epsilon = 0.015625; // resolved from epsilon or gamma * spacing
    double lambda = 0.5;

    // [grid]
    int cells = 128;
    double length = 1.0;
    double rho_max = 1.0;
    double cfl_safety = 0.9;

    PotentialSpec potential;
    Profile density;     // discrete: occupation in [0,1]; continuum: absolute rho
    Profile temperature;

    // [oracle]
    int oracle_k_cap = -1; // -1: use the lattice k_max
    int oracle_states = 20;
    unsigned oracle_seed = 1;
    double oracle_tolerance = 1e-12;

    // [experiment]
    std::string experiment_name = "soret";
    int experiment_levels = 0;     // 0: module default
    int experiment_base_sites = 0; // 0: module default

    // [tolerances]
    double conservation_rel = 1e-10;
    double entropy_drop = 1e-12;

    bool operator==(const RunConfig&) const = default;

    /// Normalized key = value document: parsing it reproduces this config
    /// exactly (full-precision floats, all defaults materialized).
    std::string canonical_text() const;
};

struct ConfigViolation {
    int line = 0; // 0 when no specific line applies
    std::string field;
    std::string message;
};

struct ParseResult {
    std::optional<RunConfig> config; // set only when violations is empty
    std::vector<ConfigViolation> violations;
};

/// Parses and validates a key = value document, reporting every violation
/// (unknown keys, missing required keys, range errors) with its line.
ParseResult parse_config(std::string_view text);

/// parse_config, folding violations into a ConfigInvalid error message.
RunConfig parse_config_or_throw(std::string_view text);

RunConfig load_config_file(const std::string& path);

const char* run_mode_name(RunMode mode);

} // namespace soretsim
