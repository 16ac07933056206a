#include <iostream>

#include "flatcusp/cli.hpp"

int main(int argc, char** argv) {
  return flatcusp::run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
