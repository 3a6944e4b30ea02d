#include <iostream>
#include <string>
#include <vector>

#include "chaosmark/cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  return chaosmark::run_cli(args, std::cout, std::cerr);
}
