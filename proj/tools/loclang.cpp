#include <iostream>
#include <string>
#include <vector>

#include "loclang/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return loclang::cli::run(args, std::cout, std::cerr);
}
