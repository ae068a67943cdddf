#pragma once

#include <charconv>
#include <cmath>
#include <string>
#include <string_view>

namespace dynhist::tsv {

// Fixed-point rendering with a stable number of decimals; used for every
// real-valued TSV column so outputs are byte-identical across runs.
inline std::string fixed(double value, int decimals = 6) {
  if (value == 0.0) value = 0.0;  // drop negative zero
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::fixed, decimals);
  return std::string(buf, res.ptr);
}

template <typename Int>
void append_int(std::string& out, Int value) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof buf, value);
  out.append(buf, res.ptr);
}

}  // namespace dynhist::tsv
