#include <iostream>
#include <vector>

#include "weylq/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return weylq::run_cli(args, std::cout, std::cerr);
}
