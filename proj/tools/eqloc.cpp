#include <iostream>

#include "eqloc/cli.hpp"

int main(int argc, char** argv) {
  return eqloc::run_cli(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
