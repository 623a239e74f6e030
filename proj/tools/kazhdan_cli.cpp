#include <iostream>

#include "kazhdan/cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  return kazhdan::cli::dispatch(args, std::cout, std::cerr);
}
