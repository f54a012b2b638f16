#include <iostream>
#include <string>
#include <vector>

#include "carto_cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return carto::cli::cli_main(std::move(args), std::cout, std::cerr);
}
