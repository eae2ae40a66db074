#include <iostream>
#include <string>
#include <vector>

#include "ubqp/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return ubqp::cli::run(args, std::cout, std::cerr);
}
