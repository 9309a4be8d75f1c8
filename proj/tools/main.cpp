#include <iostream>

#include "commands.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return dmm::cli::run(args, std::cin, std::cout, std::cerr);
}
