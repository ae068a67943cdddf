#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

#include "dynhist/error.hpp"

namespace dynhist::utf8 {

// Decodes one scalar value starting at `pos` and advances `pos` past it.
// Rejects overlong forms, surrogates and values above U+10FFFF.
inline char32_t decode_one(std::string_view bytes, std::size_t& pos) {
  const auto at = [&](std::size_t i) { return static_cast<unsigned char>(bytes[i]); };
  const std::size_t start = pos;
  const unsigned char lead = at(pos);
  if (lead < 0x80) {
    ++pos;
    return lead;
  }
  int extra = 0;
  char32_t cp = 0;
  char32_t min = 0;
  if ((lead & 0xE0) == 0xC0) {
    extra = 1;
    cp = lead & 0x1F;
    min = 0x80;
  } else if ((lead & 0xF0) == 0xE0) {
    extra = 2;
    cp = lead & 0x0F;
    min = 0x800;
  } else if ((lead & 0xF8) == 0xF0) {
    extra = 3;
    cp = lead & 0x07;
    min = 0x10000;
  } else {
    throw IngestError("invalid UTF-8 lead byte", start);
  }
  if (pos + extra >= bytes.size()) {
    throw IngestError("truncated UTF-8 sequence", start);
  }
  for (int i = 1; i <= extra; ++i) {
    const unsigned char cont = at(pos + i);
    if ((cont & 0xC0) != 0x80) throw IngestError("invalid UTF-8 continuation byte", start);
    cp = (cp << 6) | (cont & 0x3F);
  }
  if (cp < min) throw IngestError("overlong UTF-8 sequence", start);
  if (cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
    throw IngestError("UTF-8 sequence encodes a non-scalar value", start);
  }
  pos += extra + 1;
  return cp;
}

inline std::u32string decode(std::string_view bytes) {
  std::u32string out;
  out.reserve(bytes.size() / 3 + 1);
  std::size_t pos = 0;
  while (pos < bytes.size()) out.push_back(decode_one(bytes, pos));
  return out;
}

inline void append(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

inline std::string encode(char32_t cp) {
  std::string out;
  append(out, cp);
  return out;
}

inline std::string encode(std::u32string_view text) {
  std::string out;
  out.reserve(text.size() * 3);
  for (char32_t cp : text) append(out, cp);
  return out;
}

// Decodes a string that must hold exactly one scalar value.
inline bool decode_single(std::string_view bytes, char32_t& cp) {
  if (bytes.empty()) return false;
  std::size_t pos = 0;
  try {
    cp = decode_one(bytes, pos);
  } catch (const IngestError&) {
    return false;
  }
  return pos == bytes.size();
}

}  // namespace dynhist::utf8
