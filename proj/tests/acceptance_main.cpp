#include <iostream>
#include <stdexcept>

#include "acceptance_suite.hpp"

int main(int argc, char** argv) {
  if (argc < 2) return acceptance::run_all(std::cout) == 0 ? 0 : 1;
  int failures = 0;
  for (int i = 1; i < argc; ++i) {
    try {
      const auto r = acceptance::run(argv[i]);
      std::cout << acceptance::format(r) << std::endl;
      if (!r.pass) ++failures;
    } catch (const std::invalid_argument& e) {
      std::cerr << e.what() << "\n";
      return 2;
    }
  }
  return failures == 0 ? 0 : 1;
}
