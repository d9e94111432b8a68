#include <iostream>
#include <string>
#include <vector>

#include "exlab/cli.hpp"

int main(int argc, char** argv) {
  return exlab::run_cli(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
