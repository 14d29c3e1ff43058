#include <iostream>

#include "camforge/cli.hpp"

int main(int argc, char** argv) {
  return camforge::cli::run(argc, argv, std::cout, std::cerr);
}
