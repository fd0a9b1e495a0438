#pragma once

#include <istream>
#include <ostream>
#include <string>
#include <vector>

namespace ghill::cli {

enum ExitCode : int {
  ok = 0,
  usage = 2,
  data = 3,
  numeric = 4,
};

/// Runs one invocation. args excludes the program name. Results go to
/// `out` (or to --output), diagnostics to `err`; "-" as input reads `in`.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace ghill::cli
