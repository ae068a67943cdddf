#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "dynhist/corpus.hpp"
#include "dynhist/term_match.hpp"
#include "dynhist/utf8.hpp"

namespace dynhist {

// Units containing the target (focus) versus everything else (reference).
// Count vectors are indexed like `vocabulary`.
struct FocusSplit {
  std::u32string target;
  WindowUnit window = WindowUnit::sentence;
  std::vector<std::u32string> focus_units;
  std::vector<char32_t> vocabulary;
  std::vector<std::uint64_t> focus_counts;
  std::vector<std::uint64_t> reference_counts;
  std::uint64_t focus_size = 0;
  std::uint64_t reference_size = 0;

  std::uint64_t focus_count(char32_t ch) const { return lookup(focus_counts, ch); }
  std::uint64_t reference_count(char32_t ch) const { return lookup(reference_counts, ch); }

 private:
  std::uint64_t lookup(const std::vector<std::uint64_t>& counts, char32_t ch) const {
    auto it = std::lower_bound(vocabulary.begin(), vocabulary.end(), ch);
    if (it == vocabulary.end() || *it != ch) return 0;
    return counts[static_cast<std::size_t>(it - vocabulary.begin())];
  }
};

inline FocusSplit extract_focus(const IndexedCorpus& corpus, std::u32string_view target,
                                WindowUnit window = WindowUnit::sentence) {
  FocusSplit split;
  split.target = std::u32string(target);
  split.window = window;
  const auto vocab = corpus.vocabulary();
  split.vocabulary.assign(vocab.begin(), vocab.end());
  split.focus_counts.assign(vocab.size(), 0);
  split.reference_counts.assign(vocab.size(), 0);

  const std::u32string terms[] = {split.target};
  const TermMatcher matcher(corpus, terms);
  const auto ids = corpus.char_ids();
  const auto chars = corpus.chars();
  for (const Unit& u : corpus.units(window)) {
    bool hit = false;
    matcher.for_each_in_unit(u, [&](std::size_t, std::size_t) { hit = true; });
    auto& counts = hit ? split.focus_counts : split.reference_counts;
    for (std::size_t i = u.begin; i < u.end; ++i) ++counts[ids[i]];
    (hit ? split.focus_size : split.reference_size) += u.end - u.begin;
    if (hit) split.focus_units.emplace_back(chars.begin() + u.begin, chars.begin() + u.end);
  }
  return split;
}

// One focus unit per line.
inline std::string focus_dump(const FocusSplit& split) {
  std::string out;
  for (const auto& unit : split.focus_units) {
    out += utf8::encode(unit);
    out += '\n';
  }
  return out;
}

}  // namespace dynhist
