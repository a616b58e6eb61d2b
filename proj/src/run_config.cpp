#include "mcflab/run_config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>

namespace mcflab::cli {
namespace {

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

bool parse_double(const std::string& s, double& out) {
    try {
        std::size_t pos = 0;
        out = std::stod(s, &pos);
        return pos == s.size() && std::isfinite(out);
    } catch (...) {
        return false;
    }
}

bool parse_int(const std::string& s, int& out) {
    try {
        std::size_t pos = 0;
        out = std::stoi(s, &pos);
        return pos == s.size();
    } catch (...) {
        return false;
    }
}

struct KeySpec {
    std::string key;
    enum Type { Int, Double, Bool, Str } type;
    bool required;
    // returns an error message, or empty when fine
    std::function<std::string(const RunConfig&)> check;
};

std::string check_none(const RunConfig&) { return ""; }

KeySpec int_key(std::string k, bool req, int lo, int hi,
                std::string msg = "") {
    auto key = k;
    return {k, KeySpec::Int, req, [key, lo, hi, msg](const RunConfig& c) -> std::string {
                if (!c.has(key)) return "";
                int v;
                if (!parse_int(c.values.at(key), v))
                    return key + ": not an integer";
                if (v < lo || v > hi)
                    return msg.empty() ? key + " must lie in [" + std::to_string(lo) +
                                             ", " + std::to_string(hi) + "]"
                                       : msg;
                return "";
            }};
}

KeySpec double_key(std::string k, bool req, double lo, double hi,
                   bool lo_strict = false) {
    auto key = k;
    return {k, KeySpec::Double, req,
            [key, lo, hi, lo_strict](const RunConfig& c) -> std::string {
                if (!c.has(key)) return "";
                double v;
                if (!parse_double(c.values.at(key), v))
                    return key + ": not a number";
                if ((lo_strict && !(v > lo)) || (!lo_strict && v < lo) || v > hi) {
                    std::ostringstream os;
                    os << key << " must lie in " << (lo_strict ? "(" : "[") << lo
                       << ", " << hi << "]";
                    return os.str();
                }
                return "";
            }};
}

KeySpec str_key(std::string k, bool req, std::vector<std::string> allowed) {
    auto key = k;
    return {k, KeySpec::Str, req,
            [key, allowed](const RunConfig& c) -> std::string {
                if (!c.has(key) || allowed.empty()) return "";
                const std::string& v = c.values.at(key);
                if (std::find(allowed.begin(), allowed.end(), v) == allowed.end()) {
                    std::string opts;
                    for (const auto& a : allowed) opts += (opts.empty() ? "" : "|") + a;
                    return key + " must be one of: " + opts;
                }
                return "";
            }};
}

KeySpec bool_key(std::string k) {
    auto key = k;
    return {k, KeySpec::Bool, false,
            [key](const RunConfig& c) -> std::string {
                if (!c.has(key)) return "";
                const std::string& v = c.values.at(key);
                if (v != "true" && v != "false" && v != "0" && v != "1")
                    return key + " must be true/false";
                return "";
            }};
}

KeySpec dim_key() {
    return {"n", KeySpec::Int, true, [](const RunConfig& c) -> std::string {
                if (!c.has("n")) return "";
                int v;
                if (!parse_int(c.values.at("n"), v)) return "n: not an integer";
                if (v < 2) return "n must be >= 2";
                return "";
            }};
}

const std::map<std::string, std::vector<KeySpec>>& catalog() {
    auto tol = [] { return double_key("tol", false, 0.0, 1e-3, true); };
    auto cfl = [] { return double_key("cfl", false, 0.0, 0.25, true); };
    auto out = [] { return KeySpec{"out", KeySpec::Str, false, check_none}; };
    static const std::map<std::string, std::vector<KeySpec>> cat = {
        {"series",
         {dim_key(), int_key("order", false, 1, 21, "order must be odd and lie in [1, 21]"),
          str_key("kind", false, {"tail", "origin"}), bool_key("symbolic"), out()}},
        {"soliton",
         {dim_key(), double_key("r_max", false, 10.0, 1e6), tol(),
          double_key("resample", false, 0.0, 1e6, true), out()}},
        {"wings",
         {dim_key(), double_key("r_wing", true, 0.0, 1e6, true),
          double_key("r_max", false, 0.0, 1e6, true),
          double_key("switch_slope", false, 0.5, 2.0),
          double_key("epsilon", false, 0.0, 1e6), tol(),
          double_key("resample", false, 0.0, 1e6, true), out()}},
        {"evolve",
         {dim_key(), double_key("r_max", true, 0.0, 1e6, true),
          double_key("r_min", false, 0.0, 1e6),
          int_key("m", false, 16, 10'000'000), cfl(),
          str_key("scheme", false, {"explicit", "implicit"}),
          double_key("dt", false, 0.0, 1e6, true),
          double_key("newton_tol", false, 0.0, 1.0, true),
          int_key("newton_max_iters", false, 1, 10'000),
          str_key("initial", false, {"bowl", "sphere", "plane"}),
          double_key("sphere_radius", false, 0.0, 1e6, true),
          double_key("horizon", true, 0.0, 1e6),
          double_key("sample_dt", false, 0.0, 1e6, true), out()}},
        {"stability",
         {dim_key(), double_key("epsilon", true, 0.0, 1e3, true),
          double_key("r_wing", false, 0.0, 1e6, true),
          double_key("r_max", false, 0.0, 1e6, true),
          double_key("h", false, 0.0, 1e3, true), cfl(),
          str_key("pert", false, {"bump", "slow"}),
          double_key("amplitude", false, -1e6, 1e6),
          double_key("rho", false, 0.0, 1e6, true),
          double_key("p", false, 0.0, 1e3, true),
          double_key("horizon", false, 0.0, 1e6, true),
          double_key("sample_dt", false, 0.0, 1e6, true), out()}},
        {"plane",
         {{"n", KeySpec::Int, true,
           [](const RunConfig& c) -> std::string {
               if (!c.has("n")) return "";
               int v;
               if (!parse_int(c.values.at("n"), v)) return "n: not an integer";
               if (v < 3) return "n must be >= 3 for plane stability";
               return "";
           }},
          double_key("catenoid_c", false, 0.0, 1e6, true),
          double_key("epsilon", true, 0.0, 1e3, true),
          double_key("r_max", false, 0.0, 1e6, true),
          double_key("h", false, 0.0, 1e3, true), cfl(),
          str_key("pert", false, {"bump", "slow"}),
          double_key("amplitude", false, -1e6, 1e6),
          double_key("rho", false, 0.0, 1e6, true),
          double_key("p", false, 0.0, 1e3, true),
          double_key("horizon", false, 0.0, 1e6, true),
          double_key("sample_dt", false, 0.0, 1e6, true), out()}},
        {"growth",
         {dim_key(), double_key("c", false, 0.0, 1e6, true),
          double_key("tau", false, 0.0, 1e6, true),
          double_key("r_max", false, 0.0, 1e6, true),
          double_key("h", false, 0.0, 1e3, true), cfl(), out()}},
    };
    return cat;
}

}  // namespace

std::string RunConfig::get_string(const std::string& key,
                                  const std::string& dflt) const {
    auto it = values.find(key);
    return it == values.end() ? dflt : it->second;
}

double RunConfig::get_double(const std::string& key, double dflt) const {
    auto it = values.find(key);
    if (it == values.end()) return dflt;
    double v;
    if (!parse_double(it->second, v))
        throw ConfigurationError(key + ": not a number: " + it->second);
    return v;
}

int RunConfig::get_int(const std::string& key, int dflt) const {
    auto it = values.find(key);
    if (it == values.end()) return dflt;
    int v;
    if (!parse_int(it->second, v))
        throw ConfigurationError(key + ": not an integer: " + it->second);
    return v;
}

bool RunConfig::get_bool(const std::string& key, bool dflt) const {
    auto it = values.find(key);
    if (it == values.end()) return dflt;
    if (it->second == "true" || it->second == "1") return true;
    if (it->second == "false" || it->second == "0") return false;
    throw ConfigurationError(key + ": not a boolean: " + it->second);
}

std::string RunConfig::dump() const {
    std::ostringstream os;
    for (const auto& [k, v] : values) os << k << " = " << v << "\n";
    return os.str();
}

RunConfig parse_config(const std::string& file_path,
                       const std::vector<std::string>& overrides) {
    RunConfig cfg;
    if (!file_path.empty()) {
        std::ifstream f(file_path);
        if (!f) throw ConfigurationError("cannot open config file: " + file_path);
        std::string line;
        int lineno = 0;
        while (std::getline(f, line)) {
            ++lineno;
            auto hash = line.find('#');
            if (hash != std::string::npos) line = line.substr(0, hash);
            line = trim(line);
            if (line.empty()) continue;
            auto eq = line.find('=');
            if (eq == std::string::npos)
                throw ConfigurationError(file_path + ":" + std::to_string(lineno) +
                                         ": expected key = value");
            std::string k = trim(line.substr(0, eq));
            std::string v = trim(line.substr(eq + 1));
            if (k.empty())
                throw ConfigurationError(file_path + ":" + std::to_string(lineno) +
                                         ": empty key");
            cfg.values[k] = v;
        }
    }
    for (const auto& ov : overrides) {
        auto eq = ov.find('=');
        if (eq == std::string::npos)
            throw ConfigurationError("override must be key=value: " + ov);
        std::string k = trim(ov.substr(0, eq));
        std::string v = trim(ov.substr(eq + 1));
        if (k.empty()) throw ConfigurationError("override with empty key: " + ov);
        cfg.values[k] = v;
    }
    return cfg;
}

std::vector<std::string> validate_config(const std::string& subcommand,
                                         const RunConfig& cfg) {
    std::vector<std::string> errs;
    auto it = catalog().find(subcommand);
    if (it == catalog().end()) {
        errs.push_back("unknown subcommand: " + subcommand);
        return errs;
    }
    const auto& specs = it->second;
    for (const auto& [key, value] : cfg.values) {
        (void)value;
        bool known = false;
        for (const auto& s : specs)
            if (s.key == key) known = true;
        if (!known) errs.push_back("unknown key: " + key);
    }
    for (const auto& s : specs) {
        if (s.required && !cfg.has(s.key)) {
            errs.push_back("missing required key: " + s.key);
            continue;
        }
        std::string e = s.check(cfg);
        if (!e.empty()) errs.push_back(e);
    }
    // cross-field constraints
    if (subcommand == "series" && cfg.has("order")) {
        int v;
        if (parse_int(cfg.values.at("order"), v) && v % 2 == 0)
            errs.push_back("order must be odd and lie in [1, 21]");
    }
    return errs;
}

void require_valid(const std::string& subcommand, const RunConfig& cfg) {
    auto errs = validate_config(subcommand, cfg);
    if (!errs.empty()) {
        std::string joined = "invalid configuration:";
        for (const auto& e : errs) joined += "\n  - " + e;
        throw ConfigurationError(joined);
    }
}

const std::vector<std::string>& subcommands() {
    static const std::vector<std::string> s = {"series", "soliton", "wings",
                                               "evolve", "stability", "plane",
                                               "growth"};
    return s;
}

}  // namespace mcflab::cli
