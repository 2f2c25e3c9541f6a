#pragma once

#include <charconv>
#include <cmath>
#include <cstdint>
#include <string>

namespace telegraph {

// Locale-independent shortest-roundtrip formatting. Infinities serialize as
// "inf"/"-inf" so rate-function CSVs survive a parse round trip.
inline std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  (void)ec;
  return std::string(buf, ptr);
}

inline std::string format_u64(std::uint64_t v) {
  char buf[24];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  (void)ec;
  return std::string(buf, ptr);
}

} // namespace telegraph
