#include <iostream>

#include "shiftbeat/cli.hpp"

int main(int argc, char** argv) {
  return shiftbeat::run_cli(argc, argv, std::cout, std::cerr);
}
