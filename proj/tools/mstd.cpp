#include <iostream>

#include "mstd/cli.hpp"

int main(int argc, char** argv) {
  return mstd::cli::run(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
