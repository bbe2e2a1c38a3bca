#include <cstdlib>
#include <cstring>
#include <iostream>

#include "qsplit/acceptance.hpp"

// Prints one PASS/FAIL line per criterion; exits nonzero if any fails.
// Flags: --quick for the quick profile, --only N for a single criterion.
int main(int argc, char** argv) {
  using namespace qsplit::acceptance;
  Profile profile = Profile::full;
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--quick") == 0) {
      profile = Profile::quick;
    } else if (std::strcmp(argv[i], "--only") == 0 && i + 1 < argc) {
      only = std::atoi(argv[++i]);
    } else {
      std::cerr << "usage: " << argv[0] << " [--quick] [--only N]\n";
      return 2;
    }
  }
  bool ok = true;
  for (int id = 1; id <= kCriteria; ++id) {
    if (only != 0 && id != only) continue;
    const auto r = run_criterion(id, profile);
    std::cout << format_line(r) << std::endl;
    ok = ok && r.pass;
  }
  return ok ? 0 : 1;
}
