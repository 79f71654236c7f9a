#pragma once

#include <array>
#include <charconv>
#include <string>

namespace polykin::detail {

/// Shortest representation that round-trips the double exactly.
inline std::string format_double(double x) {
  std::array<char, 32> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  return std::string(buf.data(), res.ptr);
}

} // namespace polykin::detail
