#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace colstack {

/// Exit codes of the command-line tool.
enum ExitCode : int {
    kExitYes = 0,
    kExitNo = 1,
    kExitBadInput = 2,
    kExitBudget = 3,
};

/// Runs one colstack command. args excludes the program name. A FILE argument
/// of `-` reads from in.
int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

} // namespace colstack
