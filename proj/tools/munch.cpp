#include <iostream>

#include "munch/cli.hpp"

int main(int argc, char** argv) {
  return munch::run_cli(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
