#include <goldsplit/cli.hpp>

#include <iostream>

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return goldsplit::run_cli(args, std::cout, std::cerr);
}
