#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace tmkg::cli {

// Runs one CLI invocation with all output on the given streams. Exit codes:
// 0 success, 1 usage error, 2 input/parse failure, 3 remote-embedder failure.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tmkg::cli
