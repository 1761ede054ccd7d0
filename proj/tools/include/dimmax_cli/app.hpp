#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "dimmax_cli/run_config.hpp"

namespace dimmax::cli {

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNotConverged = 3;
inline constexpr int kExitNumeric = 4;

// Runs one command and writes its artifacts under config.out_dir. Returns
// the exit code; progress and errors go to `log`.
int run(const RunConfig& config, std::ostream& log);

// Parses flags (and an optional --config file) and calls run.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dimmax::cli
