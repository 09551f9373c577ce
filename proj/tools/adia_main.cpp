#include <iostream>
#include <string>
#include <vector>

#include "adia/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return adia::cli_main(args, std::cout, std::cerr);
}
