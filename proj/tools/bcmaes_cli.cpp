#include <iostream>
#include <string>
#include <vector>

#include "bcmaes/harness.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return bcmaes::cli_main(args, std::cout, std::cerr);
}
