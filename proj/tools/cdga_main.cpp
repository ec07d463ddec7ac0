#include <iostream>
#include <string>
#include <vector>

#include "cdga/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return cdga::cli::run(args, std::cin, std::cout, std::cerr);
}
