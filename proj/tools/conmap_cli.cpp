#include <iostream>

#include "conmap/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  auto result = conmap::cli::run(args);
  std::cout << result.payload.dump(2) << "\n";
  return result.exit_code;
}
