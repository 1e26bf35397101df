#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "fuzzyplane/error.hpp"

namespace fuzzyplane::cli {

/// 1 for parse and argument errors, 2 for geometric failures, 3 for I/O.
int exit_code_for(ErrorCode code);

/// Runs the `fpf` command line; `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fuzzyplane::cli
