#pragma once

#include <string>
#include <vector>

namespace mdiew {

// Full command-line entry point; args exclude the program name. Returns the
// process exit code: 0 success, 1 failed check or runtime error, 2 usage or
// config error.
int run_cli(std::vector<std::string> args);

}  // namespace mdiew
