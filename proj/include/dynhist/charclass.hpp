#pragma once

#include <algorithm>
#include <array>
#include <utility>

namespace dynhist::charclass {

namespace detail {

using Range = std::pair<char32_t, char32_t>;  // inclusive

// Whitespace, controls and invisible format characters.
inline constexpr std::array kSpaceRanges = {
    Range{0x0000, 0x0020}, Range{0x007F, 0x00A0}, Range{0x00AD, 0x00AD},
    Range{0x1680, 0x1680}, Range{0x180E, 0x180E}, Range{0x2000, 0x200F},
    Range{0x2028, 0x202F}, Range{0x205F, 0x206F}, Range{0x3000, 0x3000},
    Range{0xFEFF, 0xFEFF},
};

// Unicode punctuation (Pc Pd Ps Pe Pi Pf Po) in the blocks that occur in
// Chinese text, the ASCII punctuation/symbol set and the CJK bracket and
// mark symbols. Ideographic iteration marks and numerals (U+3005..3007,
// U+3021..3029) are letters/numbers and stay indexable.
inline constexpr std::array kPunctRanges = {
    Range{0x0021, 0x002F}, Range{0x003A, 0x0040}, Range{0x005B, 0x0060},
    Range{0x007B, 0x007E}, Range{0x00A1, 0x00A1}, Range{0x00A7, 0x00A7},
    Range{0x00AB, 0x00AB}, Range{0x00B6, 0x00B7}, Range{0x00BB, 0x00BB},
    Range{0x00BF, 0x00BF}, Range{0x037E, 0x037E}, Range{0x0387, 0x0387},
    Range{0x2010, 0x2027}, Range{0x2030, 0x205E}, Range{0x2E00, 0x2E7F},
    Range{0x3001, 0x3004}, Range{0x3008, 0x3020}, Range{0x3030, 0x3030},
    Range{0x3036, 0x3037}, Range{0x303D, 0x303F}, Range{0x30FB, 0x30FB},
    Range{0xFE10, 0xFE19}, Range{0xFE30, 0xFE4F}, Range{0xFE50, 0xFE6B},
    Range{0xFF01, 0xFF0F}, Range{0xFF1A, 0xFF20}, Range{0xFF3B, 0xFF40},
    Range{0xFF5B, 0xFF65},
};

template <std::size_t N>
constexpr bool in_ranges(const std::array<Range, N>& ranges, char32_t cp) {
  // Ranges are sorted and disjoint.
  auto it = std::upper_bound(ranges.begin(), ranges.end(), cp,
                             [](char32_t v, const Range& r) { return v < r.first; });
  if (it == ranges.begin()) return false;
  --it;
  return cp <= it->second;
}

}  // namespace detail

constexpr bool is_space(char32_t cp) { return detail::in_ranges(detail::kSpaceRanges, cp); }

constexpr bool is_punctuation(char32_t cp) {
  return detail::in_ranges(detail::kPunctRanges, cp);
}

constexpr bool is_strippable(char32_t cp) { return is_space(cp) || is_punctuation(cp); }

}  // namespace dynhist::charclass
