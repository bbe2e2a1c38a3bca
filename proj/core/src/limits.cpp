#include "qsplit/limits.hpp"

#include <cstdlib>
#include <sstream>

#include "qsplit/errors.hpp"

namespace qsplit {

Limits Limits::from_environment() {
  Limits limits;
  if (const char* env = std::getenv("QSPLIT_CAP_BYTES"); env != nullptr && *env != '\0') {
    char* end = nullptr;
    const unsigned long long value = std::strtoull(env, &end, 10);
    if (end == env || *end != '\0') throw DomainError("QSPLIT_CAP_BYTES must be a byte count");
    limits.max_bytes = value;
  }
  return limits;
}

void Limits::require(long double projected_items, std::uint64_t bytes_per_item, const std::string& what) const {
  if (cap_override) return;
  const long double projected = projected_items * static_cast<long double>(bytes_per_item);
  if (projected > static_cast<long double>(max_bytes)) {
    std::ostringstream msg;
    msg << what << ": projected " << static_cast<double>(projected) << " bytes exceeds cap of " << max_bytes
        << " bytes (raise QSPLIT_CAP_BYTES or pass --cap-override)";
    throw ResourceCapError(msg.str());
  }
}

const Limits& default_limits() {
  static const Limits limits = Limits::from_environment();
  return limits;
}

}  // namespace qsplit
