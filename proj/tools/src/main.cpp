#include <iostream>

#include "interp/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return interp::cli::run(args, std::cout, std::cerr);
}
