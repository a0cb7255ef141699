#include <iostream>
#include <string>
#include <vector>

#include "hyperspectra/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return hyperspectra::run_cli(args, std::cout, std::cerr);
}
