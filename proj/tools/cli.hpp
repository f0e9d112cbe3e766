#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace planvec::cli {

enum ExitCode : int { kOk = 0, kInputError = 2, kInternalError = 3 };

/// Runs the planvec command line; args[0] is the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace planvec::cli
