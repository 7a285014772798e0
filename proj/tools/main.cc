#include <iostream>

#include "cli.h"

int main(int argc, char** argv) {
  return jafront::cli::run(argc, argv, std::cin, std::cout, std::cerr);
}
