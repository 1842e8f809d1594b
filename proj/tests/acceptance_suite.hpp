#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace acceptance {

struct Result {
  std::string id;
  bool pass = false;
  std::string detail;
  double seconds = 0;
};

// Criterion ids in run order: 1, 2, 3, 4_unlink, 4_hopf, 5, 6, 7, 8, 8_t45, 9, 10.
const std::vector<std::string>& criteria();
const char* title(const std::string& id);

// Throws std::invalid_argument for an unknown id.
Result run(const std::string& id);

// "[PASS] 3 trefoil matches ... (0.01 s)" style line.
std::string format(const Result& r);

// Runs every criterion, printing one line each; returns the number of failures.
int run_all(std::ostream& out);

}  // namespace acceptance
