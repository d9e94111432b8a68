#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace exlab {

enum ExitCode : int { kExitPass = 0, kExitMetricFailure = 1, kExitUsage = 2 };

/// Parses argv (program name first), runs the subcommand, writes the report
/// and any sample export. Returns one of ExitCode.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace exlab
