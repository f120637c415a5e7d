#include <iostream>

#include "cli.h"

int main(int argc, char** argv) {
  return trojanforge::cli::cli_main(argc, argv, std::cout, std::cerr);
}
