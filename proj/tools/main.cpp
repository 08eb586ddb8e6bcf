#include <cstdlib>
#include <iostream>

#include "macproj/cli.hpp"

int main(int argc, char** argv) {
  return macproj::cli_main({argv, argv + argc}, std::cout, std::cerr, [](const char* name) { return std::getenv(name); });
}
