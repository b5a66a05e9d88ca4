#include <string>
#include <vector>

#include "jetvar/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return jetvar::run_command(args);
}
