#include <iostream>
#include <string>
#include <vector>

#include "lucchini/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return lucchini::cli::run(std::move(args), std::cout, std::cerr);
}
