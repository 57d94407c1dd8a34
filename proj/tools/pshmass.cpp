#include <iostream>
#include <string>
#include <vector>

#include "pshmass/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return pshmass::dispatch(args, std::cout, std::cerr);
}
