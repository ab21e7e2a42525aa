#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <string>

#include "ff/errors.hpp"

namespace ff {

// Exact arbitrary-precision count. All group orders, indices and intersection
// sizes use this type; no floating point appears anywhere in order arithmetic.
using BigCount = boost::multiprecision::cpp_int;

inline std::string to_decimal(const BigCount& v) { return v.str(); }

inline BigCount parse_decimal(const std::string& s) {
  if (s.empty()) throw ValidationError("empty decimal string");
  for (size_t i = 0; i < s.size(); ++i) {
    if (s[i] >= '0' && s[i] <= '9') continue;
    throw ValidationError("bad decimal string: '" + s + "'");
  }
  return BigCount(s);
}

inline bool fits_u64(const BigCount& v) {
  return v >= 0 && v <= BigCount(UINT64_MAX);
}

inline uint64_t to_u64(const BigCount& v) {
  if (!fits_u64(v)) throw ValidationError("count too large for 64 bits: " + v.str());
  return v.convert_to<uint64_t>();
}

} // namespace ff
