#pragma once

#include <string>
#include <vector>

namespace act {

// Full command-line driver. `args` excludes the program name. Returns the
// process exit code: 0 success, 1 usage/config error, 2 data error,
// 3 internal error.
int run_cli(const std::vector<std::string>& args);

}  // namespace act
