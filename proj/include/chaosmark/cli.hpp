#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace chaosmark {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitData = 2,
  kExitCapacity = 3,
};

/// Entry point of the `chaosmark` tool; `args` excludes the program name.
/// Subcommands: keygen, embed, extract, attack, evaluate.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace chaosmark
