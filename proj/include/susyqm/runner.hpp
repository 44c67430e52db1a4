#pragma once

#include <ostream>
#include <string>

#include "susyqm/config.hpp"

namespace susyqm {

/// Runs the configured computation and returns the full output document:
/// a `#` header (resolved configuration, derived quantities, tolerances), a
/// column line, data rows and, for some subcommands, `#` footer lines.
/// Module errors propagate.
std::string render_run(const RunConfig& config);

/// render_run, then writes to `output_path` (the config's `output` when empty,
/// standard output when both are empty). Returns 0, or the exit code of the
/// failure (1 input, 2 numeric, 3 I/O) after one diagnostic line on `diag`.
int run(const RunConfig& config, std::ostream& diag, const std::string& output_path = {});

/// Reads, parses and runs a config file.
int run_file(const std::string& config_path, std::ostream& diag, const std::string& output_path = {});

}  // namespace susyqm
