#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "conjugacy.hpp"

namespace descdyn {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// key = value lines grouped under [section] headers.  Lines starting with
// '#' or ';' are comments; keys before any header land in the "" section.
struct Config {
    std::map<std::string, std::map<std::string, std::string>> sections;

    bool has(const std::string& section, const std::string& key) const {
        auto s = sections.find(section);
        return s != sections.end() && s->second.count(key) > 0;
    }

    std::optional<std::string> get(const std::string& section, const std::string& key) const {
        auto s = sections.find(section);
        if (s == sections.end()) return std::nullopt;
        auto k = s->second.find(key);
        if (k == s->second.end()) return std::nullopt;
        return k->second;
    }

    std::string require(const std::string& section, const std::string& key) const {
        if (auto v = get(section, key)) return *v;
        throw ConfigError("missing key '" + key + "' in section [" + section + "]");
    }

    std::string get_or(const std::string& section, const std::string& key,
                       const std::string& fallback) const {
        return get(section, key).value_or(fallback);
    }
};

namespace detail {
inline std::string trim(const std::string& s) {
    std::size_t lo = s.find_first_not_of(" \t\r");
    if (lo == std::string::npos) return "";
    std::size_t hi = s.find_last_not_of(" \t\r");
    return s.substr(lo, hi - lo + 1);
}
}  // namespace detail

inline Config parse_config(const std::string& text) {
    Config config;
    std::string section;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string::npos) end = text.size();
        std::string line = detail::trim(text.substr(pos, end - pos));
        pos = end + 1;
        ++line_no;
        if (line.empty() || line[0] == '#' || line[0] == ';') continue;
        if (line.front() == '[') {
            if (line.back() != ']' || line.size() < 3) {
                throw ConfigError("line " + std::to_string(line_no) + ": malformed section header");
            }
            section = detail::trim(line.substr(1, line.size() - 2));
            config.sections[section];
            continue;
        }
        std::size_t eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("line " + std::to_string(line_no) + ": expected key = value");
        }
        std::string key = detail::trim(line.substr(0, eq));
        std::string value = detail::trim(line.substr(eq + 1));
        if (key.empty()) {
            throw ConfigError("line " + std::to_string(line_no) + ": empty key");
        }
        config.sections[section][key] = value;
    }
    return config;
}

// ---------------------------------------------------------------------
// Typed value parsing

// "p/q" and bare integers give exact rational angles; anything else is read
// as a decimal number of turns.  Exactness is chosen by how the value is
// written.
inline Angle parse_angle_literal(const std::string& text) {
    bool rational = !text.empty();
    for (std::size_t i = 0; i < text.size(); ++i) {
        char c = text[i];
        bool ok = (c >= '0' && c <= '9') || c == '/' || (i == 0 && c == '-');
        rational = rational && ok;
    }
    if (rational) {
        try {
            return Angle::rational(Rational::parse(text));
        } catch (const std::exception&) {
            throw ConfigError("bad angle literal: " + text);
        }
    }
    try {
        std::size_t used = 0;
        double turns = std::stod(text, &used);
        if (used != text.size()) throw ConfigError("bad angle literal: " + text);
        return Angle::real(turns);
    } catch (const std::invalid_argument&) {
        throw ConfigError("bad angle literal: " + text);
    } catch (const std::out_of_range&) {
        throw ConfigError("bad angle literal: " + text);
    }
}

inline std::int64_t parse_i64(const std::string& text, const std::string& what) {
    try {
        std::size_t used = 0;
        long long v = std::stoll(text, &used);
        if (used != text.size()) throw ConfigError("bad " + what + ": " + text);
        return v;
    } catch (const std::invalid_argument&) {
        throw ConfigError("bad " + what + ": " + text);
    } catch (const std::out_of_range&) {
        throw ConfigError("bad " + what + ": " + text);
    }
}

inline double parse_f64(const std::string& text, const std::string& what) {
    try {
        std::size_t used = 0;
        double v = std::stod(text, &used);
        if (used != text.size()) throw ConfigError("bad " + what + ": " + text);
        return v;
    } catch (const std::invalid_argument&) {
        throw ConfigError("bad " + what + ": " + text);
    } catch (const std::out_of_range&) {
        throw ConfigError("bad " + what + ": " + text);
    }
}

// ---------------------------------------------------------------------
// Probes by name

inline Probe<Angle> circle_probe_by_name(const std::string& name) {
    if (name.rfind("sector", 0) == 0) {
        std::int64_t k = parse_i64(name.substr(6), "sector count");
        if (k < 1) throw ConfigError("sector count must be positive: " + name);
        return sector_probe(static_cast<int>(k));
    }
    if (name == "constant") return constant_probe<Angle>(FeatureVector{{1.0}});
    if (name == "position") return position_probe();
    throw ConfigError("unknown circle probe: " + name);
}

inline Probe<GridPoint> grid_coords_probe() {
    Probe<GridPoint> probe;
    probe.name = "coords";
    probe.dimension = 2;
    probe.kind = ValueKind::ExactInteger;
    probe.eval = [](const GridPoint& p) {
        return FeatureVector{{static_cast<double>(p.a), static_cast<double>(p.b)}};
    };
    return probe;
}

inline Probe<GridPoint> grid_probe_by_name(const std::string& name) {
    if (name == "constant") return constant_probe<GridPoint>(FeatureVector{{1.0}});
    if (name == "coords") return grid_coords_probe();
    throw ConfigError("unknown grid probe: " + name);
}

// ---------------------------------------------------------------------
// System descriptors: kind = rotation | doubling | cat, with lambda, n,
// probe, epsilon as applicable.

inline bool is_circle_kind(const std::string& kind) {
    return kind == "rotation" || kind == "doubling";
}

inline DescriptiveSystem<Angle> load_circle_system(const Config& config,
                                                   const std::string& section) {
    std::string kind = config.require(section, "kind");
    Probe<Angle> probe = circle_probe_by_name(config.get_or(section, "probe", "sector4"));
    if (kind == "rotation") {
        Angle lambda = parse_angle_literal(config.require(section, "lambda"));
        return make_rotation_system(lambda, std::move(probe));
    }
    if (kind == "doubling") return make_doubling_system(std::move(probe));
    throw ConfigError("section [" + section + "]: not a circle system: " + kind);
}

inline DescriptiveSystem<GridPoint> load_grid_system(const Config& config,
                                                     const std::string& section) {
    std::string kind = config.require(section, "kind");
    if (kind != "cat") throw ConfigError("section [" + section + "]: not a grid system: " + kind);
    std::int64_t n = parse_i64(config.require(section, "n"), "grid size");
    if (n < 1) throw ConfigError("grid size must be positive");
    Probe<GridPoint> probe = grid_probe_by_name(config.get_or(section, "probe", "coords"));
    return make_cat_system(n, std::move(probe));
}

// ---------------------------------------------------------------------
// Conjugacy instances: [source] and [target] system sections, a [bridge]
// section (kind = identity | affine | cat-power | table), and an optional
// [check] section for horizons and tolerance.

using CircleInstance = ConjugacyInstance<Angle, Angle>;
using GridInstance = ConjugacyInstance<GridPoint, GridPoint>;

struct LoadedInstance {
    std::variant<CircleInstance, GridInstance> instance;
    TransportParams params;
};

namespace detail {

// h(theta) = slope * theta + shift with integer slope, the circle's
// continuous affine maps.  Rational inputs with a rational shift stay exact.
inline std::function<Angle(const Angle&)> affine_angle_bridge(std::int64_t slope,
                                                              const Angle& shift) {
    return [slope, shift](const Angle& theta) {
        if (theta.is_exact() && shift.is_exact()) {
            return Angle::rational(theta.rat() * Rational(slope) + shift.rat());
        }
        return Angle::real(theta.turns() * static_cast<double>(slope) + shift.turns());
    };
}

inline std::function<GridPoint(const GridPoint&)> table_bridge(const std::string& pairs,
                                                               std::int64_t n) {
    std::map<std::pair<std::int64_t, std::int64_t>, GridPoint> table;
    std::size_t pos = 0;
    while (pos < pairs.size()) {
        std::size_t end = pairs.find(';', pos);
        if (end == std::string::npos) end = pairs.size();
        std::string entry = trim(pairs.substr(pos, end - pos));
        pos = end + 1;
        if (entry.empty()) continue;
        std::size_t arrow = entry.find("->");
        if (arrow == std::string::npos) {
            throw ConfigError("table bridge entry needs '->': " + entry);
        }
        auto parse_pair = [](const std::string& s) {
            std::size_t comma = s.find(',');
            if (comma == std::string::npos) throw ConfigError("bad grid point: " + s);
            return std::pair<std::int64_t, std::int64_t>{
                parse_i64(trim(s.substr(0, comma)), "grid coordinate"),
                parse_i64(trim(s.substr(comma + 1)), "grid coordinate")};
        };
        auto from = parse_pair(trim(entry.substr(0, arrow)));
        auto to = parse_pair(trim(entry.substr(arrow + 2)));
        table[from] = GridPoint(to.first, to.second, n);
    }
    return [table, n](const GridPoint& p) {
        auto it = table.find({p.a, p.b});
        if (it == table.end()) {
            throw std::domain_error("table bridge undefined at " + p.str());
        }
        return it->second;
    };
}

}  // namespace detail

inline LoadedInstance load_conjugacy_instance(const Config& config) {
    std::string source_kind = config.require("source", "kind");
    std::string target_kind = config.require("target", "kind");
    if (is_circle_kind(source_kind) != is_circle_kind(target_kind)) {
        throw ConfigError("source and target must live on the same state space");
    }

    TransportParams params;
    params.commute_horizon =
        static_cast<std::uint64_t>(parse_i64(config.get_or("check", "horizon", "16"), "horizon"));
    params.transitivity_horizon = params.commute_horizon;
    params.m_max =
        static_cast<std::uint64_t>(parse_i64(config.get_or("check", "mmax", "64"), "mmax"));
    params.tol.epsilon = parse_f64(config.get_or("check", "epsilon", "1e-9"), "epsilon");
    if (params.commute_horizon < 1 || params.m_max < 1) {
        throw ConfigError("horizons must be at least 1");
    }

    std::string bridge_kind = config.get_or("bridge", "kind", "identity");

    if (is_circle_kind(source_kind)) {
        CircleInstance inst;
        inst.source = load_circle_system(config, "source");
        inst.target = load_circle_system(config, "target");
        int arcs = static_cast<int>(parse_i64(config.get_or("check", "arcs", "8"), "arc count"));
        int s = static_cast<int>(parse_i64(config.get_or("check", "samples", "16"), "samples"));
        CircleBasis basis = equal_arc_basis(arcs, s);
        inst.basis_x = view(basis);
        inst.basis_y = view(basis);
        for (const Sample<Angle>& arc : basis.samples) {
            for (const Angle& t : arc) inst.sample.push_back(t);
        }
        if (bridge_kind == "identity") {
            inst.bridge = [](const Angle& t) { return t; };
            inst.bridge_name = "identity";
        } else if (bridge_kind == "affine") {
            std::int64_t slope = parse_i64(config.get_or("bridge", "slope", "1"), "slope");
            Angle shift = parse_angle_literal(config.get_or("bridge", "shift", "0"));
            inst.bridge = detail::affine_angle_bridge(slope, shift);
            inst.bridge_name = "affine(slope=" + std::to_string(slope) + ", shift=" +
                               shift.str() + ")";
        } else {
            throw ConfigError("bridge kind '" + bridge_kind + "' needs a grid instance");
        }
        return LoadedInstance{std::move(inst), params};
    }

    GridInstance inst;
    inst.source = load_grid_system(config, "source");
    inst.target = load_grid_system(config, "target");
    std::int64_t n = parse_i64(config.require("source", "n"), "grid size");
    if (parse_i64(config.require("target", "n"), "grid size") != n) {
        throw ConfigError("source and target grid sizes must match");
    }
    if (n > 16) {
        throw ConfigError("grid conjugacy instances are limited to n <= 16");
    }
    GridBasis basis = singleton_basis(n);
    inst.basis_x = view(basis);
    inst.basis_y = view(basis);
    for (const Sample<GridPoint>& cell : basis.sets) {
        for (const GridPoint& p : cell) inst.sample.push_back(p);
    }
    if (bridge_kind == "identity") {
        inst.bridge = [](const GridPoint& p) { return p; };
        inst.bridge_name = "identity";
    } else if (bridge_kind == "cat-power") {
        std::int64_t t = parse_i64(config.get_or("bridge", "power", "1"), "cat power");
        if (t < 0) throw ConfigError("cat power must be nonnegative");
        CatMap map(n);
        inst.bridge = [map, t](const GridPoint& p) {
            return map.apply(p, static_cast<std::uint64_t>(t));
        };
        inst.bridge_name = "cat-power(" + std::to_string(t) + ")";
    } else if (bridge_kind == "table") {
        inst.bridge = detail::table_bridge(config.require("bridge", "pairs"), n);
        inst.bridge_name = "table";
    } else {
        throw ConfigError("bridge kind '" + bridge_kind + "' needs a circle instance");
    }
    return LoadedInstance{std::move(inst), params};
}

}  // namespace descdyn
