#pragma once

#include <cstdio>
#include <string>

namespace stirling::detail {

// Round-trippable text for diagnostics; std::to_string truncates to six decimals.
inline std::string real_text(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace stirling::detail
