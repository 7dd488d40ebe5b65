#include <string>
#include <vector>

#include "nmslab/cli.hpp"

int main(int argc, char** argv) {
  return nmslab::run_cli(std::vector<std::string>(argv + 1, argv + argc));
}
