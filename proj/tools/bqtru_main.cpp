#include <iostream>

#include "bqtru/cli.hpp"

int main(int argc, char** argv) {
  return bqtru::run_cli(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
