#pragma once

#include <string>
#include <vector>

namespace mscx {

/* Command-line entry point: args are the words after the program name.
 * Subcommands: sample, grid, msc, diff, stats, experiment, render. Returns
 * the process exit code (0 only when all outputs were written). */
int run_cli(std::vector<std::string> args);

} // namespace mscx
