#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mtc {

// Exit statuses of the command line front end.
enum ExitStatus { kOk = 0, kInconsistent = 1, kUsage = 2, kGuard = 3 };

// args excludes the program name. Results go to out (or --out), diagnostics to err.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mtc
