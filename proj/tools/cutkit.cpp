#include <iostream>

#include "cutkit/cli.hpp"

int main(int argc, char** argv) {
  return cutkit::cli_main(argc, argv, std::cout, std::cerr);
}
