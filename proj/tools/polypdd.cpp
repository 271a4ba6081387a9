#include <iostream>

#include "polypdd/cli.hpp"

int main(int argc, char** argv) {
  return polypdd::cli::run(argc, argv, std::cout, std::cerr);
}
