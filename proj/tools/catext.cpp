#include <iostream>
#include <string>
#include <vector>

#include "catext/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return catext::cli::run(args, std::cin, std::cout);
}
