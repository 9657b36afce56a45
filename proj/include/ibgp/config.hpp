#pragma once

// Flat key-value scenario configuration: one "section.key = value" per line,
// '#' comments. Unknown keys are rejected with their line number.

#include <cctype>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace ibgp {

class ConfigError : public std::runtime_error {
  public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

struct ScenarioConfig {
    // geometry
    double W = 0.0;
    bool chord = false;                 // geometry.L = chord
    std::optional<double> L;            // set when geometry.L is numeric
    std::vector<double> R_list;
    int n = 2;

    // field: exactly one of lambda_list / (N_list + area)
    std::vector<double> lambda_list;
    std::vector<double> N_list;
    std::optional<double> area;

    // mc
    std::optional<long long> trials;
    std::optional<std::uint64_t> seed;
    int threads = 0;  // 0 = one worker per hardware thread

    // protocol
    std::optional<int> source_cell;
    std::optional<int> geocast_lo;
    std::optional<int> geocast_hi;
    std::string policy = "all";
    std::optional<int> max_hops;

    // output
    std::optional<std::string> out_path;
    std::string format = "csv";

    // tables
    std::vector<long long> table_m = {10, 15, 20, 30, 35, 40, 50};

    bool operator==(const ScenarioConfig&) const = default;
};

namespace detail {

inline std::string trim(const std::string& s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

[[noreturn]] inline void config_fail(const std::string& key, const std::string& what, int line) {
    throw ConfigError(key + ": " + what + " (line " + std::to_string(line) + ")");
}

inline double parse_number(const std::string& key, const std::string& text, int line) {
    try {
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        if (used != text.size()) config_fail(key, "unparseable number '" + text + "'", line);
        return v;
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception&) {
        config_fail(key, "unparseable number '" + text + "'", line);
    }
}

inline long long parse_integer(const std::string& key, const std::string& text, int line) {
    try {
        std::size_t used = 0;
        const long long v = std::stoll(text, &used);
        if (used != text.size()) config_fail(key, "unparseable integer '" + text + "'", line);
        return v;
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception&) {
        config_fail(key, "unparseable integer '" + text + "'", line);
    }
}

inline std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(trim(item));
    return out;
}

inline std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace detail

inline ScenarioConfig parse_config(const std::string& text) {
    ScenarioConfig cfg;
    std::istringstream in(text);
    std::string raw;
    int line = 0;
    bool have_W = false, have_L = false, have_R = false;
    while (std::getline(in, raw)) {
        ++line;
        const std::size_t hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        const std::string stripped = detail::trim(raw);
        if (stripped.empty()) continue;
        const std::size_t eq = stripped.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("expected 'section.key = value' (line " + std::to_string(line) + ")");
        }
        const std::string key = detail::trim(stripped.substr(0, eq));
        const std::string value = detail::trim(stripped.substr(eq + 1));
        if (value.empty()) throw ConfigError(key + ": empty value (line " + std::to_string(line) + ")");

        if (key == "geometry.W") {
            cfg.W = detail::parse_number(key, value, line);
            if (!(cfg.W > 0.0)) detail::config_fail(key, "must be > 0", line);
            have_W = true;
        } else if (key == "geometry.L") {
            if (value == "chord") {
                cfg.chord = true;
                cfg.L.reset();
            } else {
                cfg.chord = false;
                cfg.L = detail::parse_number(key, value, line);
                if (!(*cfg.L > 0.0)) detail::config_fail(key, "must be > 0 or 'chord'", line);
            }
            have_L = true;
        } else if (key == "geometry.R") {
            cfg.R_list.clear();
            for (const auto& item : detail::split_list(value)) {
                const double r = detail::parse_number(key, item, line);
                if (!(r > 0.0)) detail::config_fail(key, "radii must be > 0", line);
                cfg.R_list.push_back(r);
            }
            if (cfg.R_list.empty()) detail::config_fail(key, "list must be nonempty", line);
            have_R = true;
        } else if (key == "geometry.n") {
            const long long n = detail::parse_integer(key, value, line);
            if (n < 2) detail::config_fail(key, "must be >= 2", line);
            cfg.n = static_cast<int>(n);
        } else if (key == "field.lambda") {
            cfg.lambda_list.clear();
            for (const auto& item : detail::split_list(value)) {
                const double lam = detail::parse_number(key, item, line);
                if (!(lam >= 0.0)) detail::config_fail(key, "densities must be >= 0", line);
                cfg.lambda_list.push_back(lam);
            }
            if (cfg.lambda_list.empty()) detail::config_fail(key, "list must be nonempty", line);
        } else if (key == "field.N") {
            cfg.N_list.clear();
            for (const auto& item : detail::split_list(value)) {
                const double nodes = detail::parse_number(key, item, line);
                if (!(nodes >= 0.0)) detail::config_fail(key, "node counts must be >= 0", line);
                cfg.N_list.push_back(nodes);
            }
            if (cfg.N_list.empty()) detail::config_fail(key, "list must be nonempty", line);
        } else if (key == "field.area") {
            cfg.area = detail::parse_number(key, value, line);
            if (!(*cfg.area > 0.0)) detail::config_fail(key, "must be > 0", line);
        } else if (key == "mc.trials") {
            const long long t = detail::parse_integer(key, value, line);
            if (t < 100) detail::config_fail(key, "must be >= 100", line);
            cfg.trials = t;
        } else if (key == "mc.seed") {
            try {
                cfg.seed = static_cast<std::uint64_t>(std::stoull(value));
            } catch (const std::exception&) {
                detail::config_fail(key, "unparseable integer '" + value + "'", line);
            }
        } else if (key == "mc.threads") {
            const long long t = detail::parse_integer(key, value, line);
            if (t < 0) detail::config_fail(key, "must be >= 0", line);
            cfg.threads = static_cast<int>(t);
        } else if (key == "protocol.source_cell") {
            cfg.source_cell = static_cast<int>(detail::parse_integer(key, value, line));
        } else if (key == "protocol.geocast_lo") {
            cfg.geocast_lo = static_cast<int>(detail::parse_integer(key, value, line));
        } else if (key == "protocol.geocast_hi") {
            cfg.geocast_hi = static_cast<int>(detail::parse_integer(key, value, line));
        } else if (key == "protocol.policy") {
            if (value != "all" && value != "lens_only" && value != "fixed_zone1" &&
                value != "fixed_zone2" && value != "fixed_zone3" && value != "escalating") {
                detail::config_fail(key, "unknown policy '" + value + "'", line);
            }
            cfg.policy = value;
        } else if (key == "protocol.max_hops") {
            const long long h = detail::parse_integer(key, value, line);
            if (h < 1) detail::config_fail(key, "must be >= 1", line);
            cfg.max_hops = static_cast<int>(h);
        } else if (key == "output.path") {
            cfg.out_path = value;
        } else if (key == "output.format") {
            if (value != "csv") detail::config_fail(key, "only 'csv' is supported", line);
            cfg.format = value;
        } else if (key == "tables.m") {
            cfg.table_m.clear();
            for (const auto& item : detail::split_list(value)) {
                const long long m = detail::parse_integer(key, item, line);
                if (m < 0) detail::config_fail(key, "node counts must be >= 0", line);
                cfg.table_m.push_back(m);
            }
            if (cfg.table_m.empty()) detail::config_fail(key, "list must be nonempty", line);
        } else {
            throw ConfigError("unknown key " + key + " (line " + std::to_string(line) + ")");
        }
    }

    if (!have_W) throw ConfigError("missing key geometry.W");
    if (!have_L) throw ConfigError("missing key geometry.L");
    if (!have_R) throw ConfigError("missing key geometry.R");
    if (cfg.lambda_list.empty() && cfg.N_list.empty()) {
        throw ConfigError("missing key: one of field.lambda or field.N is required");
    }
    if (!cfg.lambda_list.empty() && !cfg.N_list.empty()) {
        throw ConfigError("field.lambda and field.N are mutually exclusive");
    }
    if (!cfg.N_list.empty() && !cfg.area) throw ConfigError("field.N requires field.area");
    for (const double r : cfg.R_list) {
        if (!(r > cfg.W / 2.0)) {
            throw ConfigError("geometry.R: every radius must exceed W/2");
        }
    }
    return cfg;
}

/// Canonical text form; parse_config(print_config(c)) == c.
inline std::string print_config(const ScenarioConfig& cfg) {
    std::ostringstream out;
    out << "geometry.W = " << detail::format_double(cfg.W) << "\n";
    if (cfg.chord) {
        out << "geometry.L = chord\n";
    } else if (cfg.L) {
        out << "geometry.L = " << detail::format_double(*cfg.L) << "\n";
    }
    out << "geometry.R = ";
    for (std::size_t i = 0; i < cfg.R_list.size(); ++i) {
        if (i) out << ",";
        out << detail::format_double(cfg.R_list[i]);
    }
    out << "\n";
    out << "geometry.n = " << cfg.n << "\n";
    if (!cfg.lambda_list.empty()) {
        out << "field.lambda = ";
        for (std::size_t i = 0; i < cfg.lambda_list.size(); ++i) {
            if (i) out << ",";
            out << detail::format_double(cfg.lambda_list[i]);
        }
        out << "\n";
    }
    if (!cfg.N_list.empty()) {
        out << "field.N = ";
        for (std::size_t i = 0; i < cfg.N_list.size(); ++i) {
            if (i) out << ",";
            out << detail::format_double(cfg.N_list[i]);
        }
        out << "\n";
    }
    if (cfg.area) out << "field.area = " << detail::format_double(*cfg.area) << "\n";
    if (cfg.trials) out << "mc.trials = " << *cfg.trials << "\n";
    if (cfg.seed) out << "mc.seed = " << *cfg.seed << "\n";
    out << "mc.threads = " << cfg.threads << "\n";
    if (cfg.source_cell) out << "protocol.source_cell = " << *cfg.source_cell << "\n";
    if (cfg.geocast_lo) out << "protocol.geocast_lo = " << *cfg.geocast_lo << "\n";
    if (cfg.geocast_hi) out << "protocol.geocast_hi = " << *cfg.geocast_hi << "\n";
    out << "protocol.policy = " << cfg.policy << "\n";
    if (cfg.max_hops) out << "protocol.max_hops = " << *cfg.max_hops << "\n";
    if (cfg.out_path) out << "output.path = " << *cfg.out_path << "\n";
    out << "output.format = " << cfg.format << "\n";
    out << "tables.m = ";
    for (std::size_t i = 0; i < cfg.table_m.size(); ++i) {
        if (i) out << ",";
        out << cfg.table_m[i];
    }
    out << "\n";
    return out.str();
}

}  // namespace ibgp
