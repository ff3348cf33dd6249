#include <iostream>

#include "sdom_cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return sdom::cli::run(args, std::cout, std::cerr);
}
