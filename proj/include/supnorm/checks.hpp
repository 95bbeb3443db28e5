#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace supnorm::checks {

struct CheckInfo {
  int id = 0;
  std::string name;
  std::string module;
  double time_limit = 0;  // seconds
};

struct CheckResult {
  CheckInfo info;
  bool passed = false;
  std::string detail;
  double seconds = 0;
};

inline constexpr std::uint64_t kDefaultSeed = 20240601;

const std::vector<CheckInfo>& catalog();

// Runs one criterion. Exceeding the time limit fails the check; library
// exceptions are caught and reported in the detail.
CheckResult run(int id, std::uint64_t seed = kDefaultSeed);

// Every criterion, or those of one module when module is nonempty.
std::vector<CheckResult> run_all(const std::string& module = {}, std::uint64_t seed = kDefaultSeed);

}  // namespace supnorm::checks
