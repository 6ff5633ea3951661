#pragma once

#include <string>
#include <vector>

namespace repairforge {

// Full command-line entry point; `args` excludes the program name.
// Exit codes: 0 success, 1 usage or load failure, 2 no patch found or
// synthesis exhausted or infeasible location, 3 overfitting detected.
int cli_main(const std::vector<std::string>& args);

}  // namespace repairforge
