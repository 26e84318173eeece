#include <iostream>

#include "sepcert/cli.hpp"

int main(int argc, char** argv) {
  return sepcert::run_cli(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
