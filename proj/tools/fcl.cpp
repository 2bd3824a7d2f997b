#include <cstdlib>
#include <iostream>

#include "fcl/cli/run.hpp"

int main(int argc, char** argv) {
  return fcl::cli_main(argc, argv, std::cout, std::cerr, std::getenv("FCL_JET_ORDER"));
}
