#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "subplanck/grid.hpp"

namespace subplanck::cli {

/// Exit codes of the command-line tool.
enum ExitCode : int { kOk = 0, kInvalidArgument = 1, kIoFailure = 2 };

/// Runs one invocation of the tool. `args` excludes the program name.
/// Normal output goes to `out`; failures print one "error: <kind>: <message>"
/// line to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// "min:max:count".
GridSpec parse_grid_axis(const std::string& text);

/// Comma-separated numbers; "a,b,...,c" expands the arithmetic progression
/// a, b, b + (b - a), ... up to c.
std::vector<double> parse_number_list(const std::string& text);

}  // namespace subplanck::cli
