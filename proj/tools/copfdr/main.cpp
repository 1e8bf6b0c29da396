#include "cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
  return copfdr::cli::run(argc, argv, std::cout, std::cerr);
}
