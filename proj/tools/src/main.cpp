#include <iostream>
#include <string>
#include <vector>

#include "ergolab/cli/app.hpp"

int main(int argc, char** argv) {
  try {
    ergolab::cli::apply_thread_environment();
  } catch (const std::exception& e) {
    std::cerr << "ergolab: " << e.what() << "\n";
    return ergolab::cli::kExitError;
  }
  return ergolab::cli::run_cli(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
