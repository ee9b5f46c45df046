#pragma once

#include <iosfwd>

#include "paygmix/cli/config.hpp"
#include "paygmix/cli/tables.hpp"

namespace paygmix::cli {

/// Runs a single-scenario command (everything except table) and returns a
/// one-column artifact of named quantities.
TableArtifact run_command(const RunConfig& config);

/// Whole program minus process exit: parses args, runs, writes output.
/// Returns the exit code (0 ok, 1 fixture mismatch, 2 parse, 3 numerics, 4 I/O).
int run_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace paygmix::cli
