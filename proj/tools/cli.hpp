#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace frobcoh::cli {

/// Runs one command line (without the program name) and returns the exit code:
/// 0 when every check passes, 1 when a check fails, 2 on usage or parameter errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace frobcoh::cli
