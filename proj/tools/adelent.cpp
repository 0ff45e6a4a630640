#include <iostream>
#include <string>
#include <vector>

#include "adelent/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return adelent::main_entry(args, std::cout, std::cerr);
}
