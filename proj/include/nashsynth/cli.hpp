#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace nashsynth {

enum ExitCode { kExitOk = 0, kExitViolation = 1, kExitInput = 2 };

// args excludes the program name
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace nashsynth
