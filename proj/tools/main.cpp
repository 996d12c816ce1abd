#include <iostream>
#include <string>
#include <vector>

#include "dobinski/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return dobinski::cli::dispatch(args, std::cout, std::cerr);
}
