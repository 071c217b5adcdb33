#include "soretsim/config.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace soretsim {

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string fmt_list(const std::vector<double>& values) {
    std::string out;
    for (size_t i = 0; i < values.size(); ++i) {
        if (i)
            out += ' ';
        out += fmt(values[i]);
    }
    return out;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
        s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.remove_suffix(1);
    return s;
}

struct RawEntry {
    int line;
    std::string value;
    bool used = false;
};

struct RawConfig {
    // section.key -> last entry (later occurrences override, each recorded)
    std::map<std::string, RawEntry> entries;
    std::vector<ConfigViolation> violations;

    void fail(int line, std::string field, std::string message) {
        violations.push_back({line, std::move(field), std::move(message)});
    }
};

RawConfig tokenize(std::string_view text) {
    RawConfig raw;
    std::string section;
    int line_no = 0;
    size_t pos = 0;
    while (pos <= text.size()) {
        const size_t nl = text.find('\n', pos);
        std::string_view line = text.substr(pos, nl == std::string_view::npos ? text.size() - pos
                                                                              : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;

        const size_t hash = line.find('#');
        if (hash != std::string_view::npos)
            line = line.substr(0, hash);
        const size_t semi = line.find(';');
        if (semi != std::string_view::npos)
            line = line.substr(0, semi);
        line = trim(line);
        if (line.empty())
            continue;

        if (line.front() == '[') {
            if (line.back() != ']' || line.size() < 3) {
                raw.fail(line_no, std::string(line), "malformed section header");
                continue;
            }
            section = std::string(trim(line.substr(1, line.size() - 2)));
            continue;
        }
        const size_t eq = line.find('=');
        if (eq == std::string_view::npos) {
            raw.fail(line_no, std::string(line), "expected key = value");
            continue;
        }
        const std::string key(trim(line.substr(0, eq)));
        const std::string value(trim(line.substr(eq + 1)));
        if (key.empty()) {
            raw.fail(line_no, std::string(line), "empty key");
            continue;
        }
        if (section.empty()) {
            raw.fail(line_no, key, "key outside any [section]");
            continue;
        }
        raw.entries[section + "." + key] = RawEntry{line_no, value};
    }
    return raw;
}

class Reader {
public:
    explicit Reader(RawConfig& raw) : raw_(raw) {}

    bool has(const std::string& field) const { return raw_.entries.count(field) > 0; }

    int line_of(const std::string& field) const {
        auto it = raw_.entries.find(field);
        return it == raw_.entries.end() ? 0 : it->second.line;
    }

    void read_string(const std::string& field, std::string& out) {
        auto it = raw_.entries.find(field);
        if (it == raw_.entries.end())
            return;
        it->second.used = true;
        out = it->second.value;
    }

    void read_double(const std::string& field, double& out) {
        auto it = raw_.entries.find(field);
        if (it == raw_.entries.end())
            return;
        it->second.used = true;
        if (!parse_double(it->second.value, out))
            raw_.fail(it->second.line, field, "not a number: '" + it->second.value + "'");
    }

    void read_long(const std::string& field, long& out) {
        auto it = raw_.entries.find(field);
        if (it == raw_.entries.end())
            return;
        it->second.used = true;
        double v;
        if (!parse_double(it->second.value, v) || v != std::floor(v))
            raw_.fail(it->second.line, field, "not an integer: '" + it->second.value + "'");
        else
            out = static_cast<long>(v);
    }

    void read_int(const std::string& field, int& out) {
        long v = out;
        read_long(field, v);
        out = static_cast<int>(v);
    }

    void read_uint(const std::string& field, unsigned& out) {
        long v = out;
        read_long(field, v);
        if (v < 0)
            raw_.fail(line_of(field), field, "must be nonnegative");
        else
            out = static_cast<unsigned>(v);
    }

    void read_list(const std::string& field, std::vector<double>& out) {
        auto it = raw_.entries.find(field);
        if (it == raw_.entries.end())
            return;
        it->second.used = true;
        out.clear();
        std::istringstream in(it->second.value);
        std::string token;
        while (in >> token) {
            double v;
            if (!parse_double(token, v)) {
                raw_.fail(it->second.line, field, "not a number in list: '" + token + "'");
                return;
            }
            out.push_back(v);
        }
    }

    template <typename Enum>
    void read_enum(const std::string& field, Enum& out,
                   std::initializer_list<std::pair<const char*, Enum>> table) {
        auto it = raw_.entries.find(field);
        if (it == raw_.entries.end())
            return;
        it->second.used = true;
        for (const auto& [name, v] : table) {
            if (it->second.value == name) {
                out = v;
                return;
            }
        }
        std::string allowed;
        for (const auto& [name, v] : table) {
            if (!allowed.empty())
                allowed += " | ";
            allowed += name;
        }
        raw_.fail(it->second.line, field,
                  "unknown value '" + it->second.value + "' (allowed: " + allowed + ")");
    }

    void flag_unused() {
        for (const auto& [field, entry] : raw_.entries)
            if (!entry.used)
                raw_.fail(entry.line, field, "unknown key");
    }

private:
    static bool parse_double(const std::string& s, double& out) {
        const char* begin = s.c_str();
        char* end = nullptr;
        out = std::strtod(begin, &end);
        return end == begin + s.size() && !s.empty() && std::isfinite(out);
    }

    RawConfig& raw_;
};

void read_profile(Reader& reader, RawConfig& raw, const std::string& section,
                  const std::string& prefix, Profile& p) {
    reader.read_enum(section + "." + prefix, p.kind,
                     {{"constant", ProfileKind::Constant},
                      {"linear", ProfileKind::Linear},
                      {"gaussian", ProfileKind::Gaussian},
                      {"table", ProfileKind::Table}});
    reader.read_double(section + "." + prefix + "_value", p.value);
    reader.read_double(section + "." + prefix + "_lo", p.lo);
    reader.read_double(section + "." + prefix + "_hi", p.hi);
    reader.read_double(section + "." + prefix + "_base", p.base);
    reader.read_double(section + "." + prefix + "_amp", p.amp);
    reader.read_double(section + "." + prefix + "_center", p.center);
    reader.read_double(section + "." + prefix + "_width", p.width);
    reader.read_list(section + "." + prefix + "_values", p.values);
    if (p.kind == ProfileKind::Gaussian && !(p.width > 0.0))
        raw.fail(reader.line_of(section + "." + prefix + "_width"),
                 section + "." + prefix + "_width", "gaussian width must be positive");
    if (p.kind == ProfileKind::Table && p.values.empty())
        raw.fail(reader.line_of(section + "." + prefix),
                 section + "." + prefix + "_values", "table profile needs values");
}

} // namespace

std::vector<double> Profile::materialize(int count) const {
    std::vector<double> out(count);
    switch (kind) {
    case ProfileKind::Constant:
        for (int i = 0; i < count; ++i)
            out[i] = value;
        break;
    case ProfileKind::Linear:
        for (int i = 0; i < count; ++i) {
            const double x = (i + 0.5) / count;
            out[i] = lo + (hi - lo) * x;
        }
        break;
    case ProfileKind::Gaussian:
        for (int i = 0; i < count; ++i) {
            const double x = (i + 0.5) / count;
            const double z = (x - center) / width;
            out[i] = base + amp * std::exp(-0.5 * z * z);
        }
        break;
    case ProfileKind::Table:
        if (static_cast<int>(values.size()) != count)
            raise(ErrorCode::ConfigInvalid,
                  "table profile has " + std::to_string(values.size()) +
                      " values, needs " + std::to_string(count));
        out = values;
        break;
    }
    return out;
}

std::vector<double> PotentialSpec::materialize(int count, double spacing) const {
    std::vector<double> out(count, 0.0);
    switch (kind) {
    case PotentialKind::Zero:
        break;
    case PotentialKind::Linear:
        for (int i = 0; i < count; ++i)
            out[i] = slope * (i + 0.5) * spacing;
        break;
    case PotentialKind::Table:
        if (static_cast<int>(values.size()) != count)
            raise(ErrorCode::ConfigInvalid,
                  "potential table has " + std::to_string(values.size()) +
                      " values, needs " + std::to_string(count));
        out = values;
        break;
    }
    return out;
}

ParseResult parse_config(std::string_view text) {
    RawConfig raw = tokenize(text);
    Reader reader(raw);
    RunConfig c;

    if (!reader.has("run.mode"))
        raw.fail(0, "run.mode", "missing required key (discrete | continuum | oracle-check | experiment)");
    reader.read_enum("run.mode", c.mode,
                     {{"discrete", RunMode::Discrete},
                      {"continuum", RunMode::Continuum},
                      {"oracle-check", RunMode::OracleCheck},
                      {"experiment", RunMode::Experiment}});
    reader.read_long("run.steps", c.steps);
    reader.read_int("run.output_every", c.output_every);
    reader.read_enum("run.sum_mode", c.sum_mode,
                     {{"finite", SumMode::Finite}, {"infinite", SumMode::Infinite}});
    reader.read_string("run.out_dir", c.out_dir);

    reader.read_int("lattice.sites", c.sites);
    reader.read_double("lattice.spacing", c.spacing);
    const bool has_eps = reader.has("lattice.epsilon");
    const bool has_gamma = reader.has("lattice.gamma");
    double gamma = 1.0;
    if (has_eps && has_gamma)
        raw.fail(reader.line_of("lattice.gamma"), "lattice.gamma",
                 "specify lattice.epsilon or lattice.gamma, not both");
    if (has_eps) {
        reader.read_double("lattice.epsilon", c.epsilon);
    } else {
        reader.read_double("lattice.gamma", gamma);
        c.epsilon = gamma * c.spacing;
    }
    reader.read_double("lattice.lambda", c.lambda);

    reader.read_int("grid.cells", c.cells);
    reader.read_double("grid.length", c.length);
    reader.read_double("grid.rho_max", c.rho_max);
    reader.read_double("grid.cfl_safety", c.cfl_safety);

    reader.read_enum("potential.kind", c.potential.kind,
                     {{"zero", PotentialKind::Zero},
                      {"linear", PotentialKind::Linear},
                      {"table", PotentialKind::Table}});
    reader.read_double("potential.slope", c.potential.slope);
    reader.read_list("potential.values", c.potential.values);

    read_profile(reader, raw, "initial", "density", c.density);
    read_profile(reader, raw, "initial", "temperature", c.temperature);

    reader.read_int("oracle.k_cap", c.oracle_k_cap);
    reader.read_int("oracle.states", c.oracle_states);
    reader.read_uint("oracle.seed", c.oracle_seed);
    reader.read_double("oracle.tolerance", c.oracle_tolerance);

    reader.read_string("experiment.name", c.experiment_name);
    reader.read_int("experiment.levels", c.experiment_levels);
    reader.read_int("experiment.base_sites", c.experiment_base_sites);

    reader.read_double("tolerances.conservation_rel", c.conservation_rel);
    reader.read_double("tolerances.entropy_drop", c.entropy_drop);

    reader.flag_unused();

    // Range validation (every violation reported, not just the first).
    auto positive = [&](const std::string& field, double v) {
        if (!(v > 0.0))
            raw.fail(reader.line_of(field), field, "must be positive");
    };
    if (c.steps < 0)
        raw.fail(reader.line_of("run.steps"), "run.steps", "must be >= 0");
    if (c.output_every < 1)
        raw.fail(reader.line_of("run.output_every"), "run.output_every", "must be >= 1");
    if (c.sites < 2)
        raw.fail(reader.line_of("lattice.sites"), "lattice.sites", "need at least 2 sites");
    positive("lattice.spacing", c.spacing);
    positive("lattice.lambda", c.lambda);
    if (!(c.epsilon > 0.0))
        raw.fail(reader.line_of(has_eps ? "lattice.epsilon" : "lattice.gamma"),
                 "lattice.epsilon", "energy quantum must be positive");
    else if (2.0 * c.lambda * c.epsilon > 0.5)
        raw.fail(reader.line_of("lattice.lambda"), "lattice.lambda",
                 "hop cutoff constraint violated: need 2*lambda*epsilon <= 1/2 so the "
                 "stay probability is nonnegative and k_max >= 1");
    if (c.cells < 2)
        raw.fail(reader.line_of("grid.cells"), "grid.cells", "need at least 2 cells");
    positive("grid.length", c.length);
    positive("grid.rho_max", c.rho_max);
    if (!(c.cfl_safety > 0.0) || c.cfl_safety > 1.0)
        raw.fail(reader.line_of("grid.cfl_safety"), "grid.cfl_safety", "must be in (0, 1]");
    if (c.mode == RunMode::Experiment && c.experiment_name != "soret" &&
        c.experiment_name != "dufour" && c.experiment_name != "convergence" &&
        c.experiment_name != "drift")
        raw.fail(reader.line_of("experiment.name"), "experiment.name",
                 "unknown experiment '" + c.experiment_name +
                     "' (soret | dufour | convergence | drift)");
    if (c.oracle_states < 1)
        raw.fail(reader.line_of("oracle.states"), "oracle.states", "must be >= 1");
    positive("tolerances.conservation_rel", c.conservation_rel);
    positive("tolerances.entropy_drop", c.entropy_drop);

    ParseResult result;
    result.violations = std::move(raw.violations);
    if (result.violations.empty())
        result.config = std::move(c);
    return result;
}

RunConfig parse_config_or_throw(std::string_view text) {
    ParseResult result = parse_config(text);
    if (!result.config) {
        std::string message = "invalid configuration:";
        for (const ConfigViolation& v : result.violations) {
            message += "\n  ";
            if (v.line > 0)
                message += "line " + std::to_string(v.line) + ", ";
            message += v.field + ": " + v.message;
        }
        raise(ErrorCode::ConfigInvalid, message);
    }
    return *result.config;
}

RunConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        raise(ErrorCode::Io, "cannot read config file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config_or_throw(buffer.str());
}

namespace {

const char* profile_kind_name(ProfileKind k) {
    switch (k) {
    case ProfileKind::Constant: return "constant";
    case ProfileKind::Linear: return "linear";
    case ProfileKind::Gaussian: return "gaussian";
    case ProfileKind::Table: return "table";
    }
    return "constant";
}

void emit_profile(std::ostringstream& out, const std::string& prefix, const Profile& p) {
    out << prefix << " = " << profile_kind_name(p.kind) << "\n";
    out << prefix << "_value = " << fmt(p.value) << "\n";
    out << prefix << "_lo = " << fmt(p.lo) << "\n";
    out << prefix << "_hi = " << fmt(p.hi) << "\n";
    out << prefix << "_base = " << fmt(p.base) << "\n";
    out << prefix << "_amp = " << fmt(p.amp) << "\n";
    out << prefix << "_center = " << fmt(p.center) << "\n";
    out << prefix << "_width = " << fmt(p.width) << "\n";
    out << prefix << "_values = " << fmt_list(p.values) << "\n";
}

} // namespace

const char* run_mode_name(RunMode mode) {
    switch (mode) {
    case RunMode::Discrete: return "discrete";
    case RunMode::Continuum: return "continuum";
    case RunMode::OracleCheck: return "oracle-check";
    case RunMode::Experiment: return "experiment";
    }
    return "discrete";
}

std::string RunConfig::canonical_text() const {
    std::ostringstream out;
    out << "[run]\n";
    out << "mode = " << run_mode_name(mode) << "\n";
    out << "steps = " << steps << "\n";
    out << "output_every = " << output_every << "\n";
    out << "sum_mode = " << (sum_mode == SumMode::Finite ? "finite" : "infinite") << "\n";
    out << "out_dir = " << out_dir << "\n";
    out << "\n[lattice]\n";
    out << "sites = " << sites << "\n";
    out << "spacing = " << fmt(spacing) << "\n";
    out << "epsilon = " << fmt(epsilon) << "\n";
    out << "lambda = " << fmt(lambda) << "\n";
    out << "\n[grid]\n";
    out << "cells = " << cells << "\n";
    out << "length = " << fmt(length) << "\n";
    out << "rho_max = " << fmt(rho_max) << "\n";
    out << "cfl_safety = " << fmt(cfl_safety) << "\n";
    out << "\n[potential]\n";
    out << "kind = "
        << (potential.kind == PotentialKind::Zero
                ? "zero"
                : potential.kind == PotentialKind::Linear ? "linear" : "table")
        << "\n";
    out << "slope = " << fmt(potential.slope) << "\n";
    out << "values = " << fmt_list(potential.values) << "\n";
    out << "\n[initial]\n";
    emit_profile(out, "density", density);
    emit_profile(out, "temperature", temperature);
    out << "\n[oracle]\n";
    out << "k_cap = " << oracle_k_cap << "\n";
    out << "states = " << oracle_states << "\n";
    out << "seed = " << oracle_seed << "\n";
    out << "tolerance = " << fmt(oracle_tolerance) << "\n";
    out << "\n[experiment]\n";
    out << "name = " << experiment_name << "\n";
    out << "levels = " << experiment_levels << "\n";
    out << "base_sites = " << experiment_base_sites << "\n";
    out << "\n[tolerances]\n";
    out << "conservation_rel = " << fmt(conservation_rel) << "\n";
    out << "entropy_drop = " << fmt(entropy_drop) << "\n";
    return out.str();
}

} // namespace soretsim
