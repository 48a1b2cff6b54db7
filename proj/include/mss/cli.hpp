#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace mss {

inline constexpr const char* kVersion = "1.0.0";

// Runs one CLI invocation; args excludes the program name.
// Returns 0 on success, 1 on a violated mathematical precondition, 2 on usage errors.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mss
