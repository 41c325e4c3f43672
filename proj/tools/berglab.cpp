#include <iostream>
#include <string>
#include <vector>

#include "berglab/cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  return berglab::run_main(args, std::cout, std::cerr);
}
