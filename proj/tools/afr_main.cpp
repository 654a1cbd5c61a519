#include <iostream>
#include <vector>

#include "afr/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return afr::run_cli(args, std::cout, std::cerr);
}
