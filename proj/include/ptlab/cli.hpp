#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace ptlab {

inline constexpr const char* kVersion = "0.1.0";

// Runs the ptlab command line. Exit codes: 0 success, 1 internal failure,
// 2 usage/input error.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

} // namespace ptlab
