#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "macproj/config.hpp"

namespace macproj {

/// Exit codes of the command-line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitVerdict = 1;
inline constexpr int kExitUsage = 2;

/// Runs the tool: args[0] is the program name, args[1] the subcommand
/// (run, verify, convergence, operators-check, translate).
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, const EnvLookup& env);

}  // namespace macproj
