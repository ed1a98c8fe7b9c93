#include <exception>
#include <iostream>

#include "tricover/cli.hpp"

int main(int argc, char** argv) {
  try {
    const auto res = tricover::run_cli(std::vector<std::string>(argv + 1, argv + argc));
    std::cout << res.out;
    std::cerr << res.err;
    return res.exit_code;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
}
