#include <string>
#include <vector>

#include "threshold/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return threshold::run_cli(args);
}
