#include <iostream>
#include <string>
#include <vector>

#include "braidform/app.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return braidform::app::run(args, std::cout, std::cerr);
}
