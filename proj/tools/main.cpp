#include <iostream>

#include "g4ix/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return g4ix::run_cli(args, std::cout, std::cerr);
}
