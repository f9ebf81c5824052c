#pragma once

#include <charconv>
#include <string>

namespace nls {

// shortest round-trip decimal form; keeps text artifacts bit-reproducible
inline std::string format_double(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

}  // namespace nls
