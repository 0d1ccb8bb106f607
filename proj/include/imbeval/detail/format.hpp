#pragma once

#include <charconv>
#include <string>
#include <system_error>

namespace imbeval::detail {

// Shortest decimal form that parses back to the same double. Keeps every
// emitted file byte-stable and round-trip exact.
inline std::string format_double(double value) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  (void)ec;  // 32 chars always suffice for shortest-form doubles
  return std::string(buf, ptr);
}

}  // namespace imbeval::detail
