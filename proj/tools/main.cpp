#include <iostream>

#include "crowdsel/cli.hpp"

int main(int argc, char** argv) {
  return crowdsel::cli::run(argc, argv, std::cout, std::cerr);
}
