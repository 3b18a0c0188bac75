#pragma once

#include <charconv>
#include <cstdint>
#include <string>

namespace wn {

/// Locale-independent float formatting with 17 significant digits; parsing
/// the result reproduces the value bit-exactly.
inline std::string fmt17(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

/// Strict locale-independent double parsing; returns false on trailing junk.
inline bool parse_double(const std::string& s, double& out) {
  const char* b = s.data();
  const char* e = s.data() + s.size();
  auto res = std::from_chars(b, e, out);
  return res.ec == std::errc() && res.ptr == e;
}

}  // namespace wn
