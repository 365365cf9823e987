#include <iostream>

#include "llv/cli.hpp"

int main(int argc, char** argv) {
  return llv::run_cli(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
