#pragma once

#include <string>
#include <vector>

#include "qsplit/limits.hpp"

namespace qsplit::acceptance {

enum class Profile { quick, full };

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
};

inline constexpr int kCriteria = 12;

CriterionResult run_criterion(int id, Profile profile, const Limits& limits = default_limits());
std::vector<CriterionResult> run_all(Profile profile, const Limits& limits = default_limits());

// "PASS 3 paper-constants: ..." / "FAIL ...".
std::string format_line(const CriterionResult& result);

}  // namespace qsplit::acceptance
