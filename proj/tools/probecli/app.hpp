#pragma once

#include <iosfwd>

namespace probecli {

enum ExitCode : int { kOk = 0, kValidationFailed = 1, kConfigError = 2, kNotConverged = 3 };

// full command line handling; returns the process exit status
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace probecli
