#include <iostream>
#include <string>
#include <vector>

#include "listdec/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return listdec::cli_run(args, std::cout, std::cerr);
}
