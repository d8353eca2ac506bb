#include <iostream>

#include "stallings_cli/cli.hpp"

int main(int argc, char** argv) {
  return stallings::cli::run({argv + 1, argv + argc}, std::cout, std::cerr);
}
