#include <iostream>

#include "fpgt/cli.hpp"

int main(int argc, char** argv) {
  return fpgt::cli::run(argc, argv, std::cout, std::cerr);
}
