#pragma once

#include <string>
#include <vector>

namespace charges::cli {

// Full command-line front end; returns the process exit code.
// 0 = success, 1 = domain/invariant violation, 2 = I/O or usage error.
int run(std::vector<std::string> args);

} // namespace charges::cli
