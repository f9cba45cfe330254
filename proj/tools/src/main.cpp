#include <iostream>

#include "symtwo_cli/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return symtwo::cli::run(args, std::cin, std::cout);
}
