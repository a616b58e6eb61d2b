#pragma once

#include <iosfwd>
#include <string>

#include "mcflab/run_config.hpp"

namespace mcflab::cli {

/// Execute one subcommand.  Writes CSV data plus a gnuplot script into the
/// configured output directory.  Returns 0 on success, 1 when a run-level
/// assertion fails, 2 on configuration errors; diagnostics go to `err`.
int run(const std::string& subcommand, const RunConfig& cfg, std::ostream& out,
        std::ostream& err);

}  // namespace mcflab::cli
