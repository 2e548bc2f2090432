#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace famedkit {

enum ExitCode { kExitOk = 0, kExitMath = 1, kExitInput = 2 };

// args excludes the program name
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}
