#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace fourap {

struct SuiteConfig {
  uint32_t p = 5;
  int n = 3;
  uint64_t seed = 7;
};

// One verified inequality. The inputs summary plus the suite seed pin down
// the instance, so lhs and rhs are recomputable from the record alone.
struct CheckRecord {
  std::string lemma;
  std::string inputs;
  double lhs;
  double rhs;
  std::string bound;
  bool pass;
  double wall_ms;  // measured, excluded from canonical output for determinism
};

std::vector<std::string> suite_names();
bool is_suite(const std::string& name);

// Runs one named suite; throws std::invalid_argument for unknown names.
std::vector<CheckRecord> run_suite(const std::string& name, const SuiteConfig& cfg);

}  // namespace fourap
