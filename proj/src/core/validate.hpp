#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace qhet::validate {

enum class Level { quick, full };

struct Check {
  std::string name;
  bool pass = false;
  std::string detail;
};

// Cross-method invariant suite: engine properties, analytic identities,
// oracle-vs-analytic equality, and (at full level) the Monte-Carlo spectral
// ensemble checks. Deterministic for a given seed.
std::vector<Check> run_validation(Level level, uint64_t seed);

std::string format_report(const std::vector<Check>& checks);

inline int count_failed(const std::vector<Check>& checks) {
  int n = 0;
  for (const auto& c : checks)
    if (!c.pass) ++n;
  return n;
}

}  // namespace qhet::validate
