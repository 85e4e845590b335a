#include <cstdlib>
#include <iostream>

#include "uncond/cli.hpp"

int main(int argc, char** argv) {
  uncond::CliEnvironment env;
  if (const char* budget = std::getenv("UNCOND_BUDGET")) env.budget = budget;
  const uncond::CliResult r = uncond::run_cli({argv + 1, argv + argc}, env);
  std::cout << r.out;
  std::cerr << r.err;
  return r.exit_code;
}
