#include <iostream>

#include "rbsc/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return rbsc::run_cli(args, std::cin, std::cout, std::cerr);
}
