#pragma once

// Flat key = value run configuration: plain-text files with '#' comments,
// flag overrides on top, and per-subcommand validation that reports every
// violation at once.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mcflab/errors.hpp"

namespace mcflab::cli {

struct RunConfig {
    std::map<std::string, std::string> values;

    bool has(const std::string& key) const { return values.count(key) != 0; }
    std::string get_string(const std::string& key, const std::string& dflt) const;
    double get_double(const std::string& key, double dflt) const;
    int get_int(const std::string& key, int dflt) const;
    bool get_bool(const std::string& key, bool dflt) const;

    /// Canonical text form (sorted keys); reparsing reproduces the config.
    std::string dump() const;
};

/// Parse a config file (empty path allowed) and apply "key=value" overrides.
RunConfig parse_config(const std::string& file_path,
                       const std::vector<std::string>& overrides);

/// Validate for a subcommand; returns every violation (empty when valid).
std::vector<std::string> validate_config(const std::string& subcommand,
                                         const RunConfig& cfg);

/// validate_config + throw ConfigurationError listing all violations.
void require_valid(const std::string& subcommand, const RunConfig& cfg);

/// Known subcommand names.
const std::vector<std::string>& subcommands();

}  // namespace mcflab::cli
