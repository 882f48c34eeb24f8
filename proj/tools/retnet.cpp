#include <iostream>

#include "retnet/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return retnet::cli::Run(args, std::cout, std::cerr);
}
