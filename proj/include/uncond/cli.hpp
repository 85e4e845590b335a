#pragma once

// Command-line front end. Every subcommand builds a JSON report; the text
// output is a flattened rendering of the same document.

#include <optional>
#include <string>
#include <vector>

namespace uncond {

inline constexpr const char* kVersion = "1.0.0";

enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,
  kExitInputError = 2,
  kExitBudgetExceeded = 3,
};

struct CliResult {
  int exit_code = kExitOk;
  std::string out;
  std::string err;
};

struct CliEnvironment {
  /// Value of UNCOND_BUDGET, if set.
  std::optional<std::string> budget;
};

/// Runs one invocation; `args` excludes the program name.
CliResult run_cli(const std::vector<std::string>& args, const CliEnvironment& env = {});

}  // namespace uncond
