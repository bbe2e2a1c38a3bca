#pragma once

#include <cstdint>
#include <string>

namespace qsplit {

// Resource caps and parallelism shared by every enumeration-heavy operation.
struct Limits {
  std::uint64_t max_bytes = 2ull << 30;  // QSPLIT_CAP_BYTES
  bool cap_override = false;             // skip all cap checks
  unsigned threads = 1;

  // Reads QSPLIT_CAP_BYTES if set.
  static Limits from_environment();

  // Throws ResourceCapError when items * bytes_per_item exceeds max_bytes.
  void require(long double projected_items, std::uint64_t bytes_per_item, const std::string& what) const;
};

const Limits& default_limits();

}  // namespace qsplit
