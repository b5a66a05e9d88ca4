#pragma once

#include <string>
#include <vector>

namespace jetvar {

/// Full command-line entry point, argv without the program name.
/// Exit codes: 0 success, 1 verification or tolerance failure, 2
/// configuration error (message on standard error).
int run_command(const std::vector<std::string>& argv);

}  // namespace jetvar
