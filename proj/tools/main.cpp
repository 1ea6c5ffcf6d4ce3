#include <iostream>
#include <string>
#include <vector>

#include "circsym/app/app.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return circsym::app::run(args, std::cout, std::cerr);
}
