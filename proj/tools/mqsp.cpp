#include <vector>

#include "mqsp/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return mqsp::cli::run(args);
}
