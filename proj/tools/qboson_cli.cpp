#include <iostream>
#include <string>
#include <vector>

#include <qboson/cli.hpp>

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return qboson::run_command(args, std::cout, std::cerr);
}
