#include <iostream>

#include "cubic/cli.hpp"

int main(int argc, char** argv) {
  return cubic::run_cli(argc, argv, std::cout, std::cerr);
}
