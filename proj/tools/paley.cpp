#include <iostream>
#include <string>
#include <vector>

#include "paley/cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  return paley::cli::run(args, std::cout, std::cerr);
}
