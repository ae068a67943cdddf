#pragma once

#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "dynhist/corpus.hpp"
#include "dynhist/ingest.hpp"
#include "dynhist/lexicon.hpp"

namespace dynhist::fixture {

// Builds a corpus from raw history texts; history i gets id i + 1.
inline IndexedCorpus corpus_from_texts(const std::vector<std::string>& texts) {
  std::vector<HistorySource> sources;
  for (std::size_t i = 0; i < texts.size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    sources.push_back({id, "h" + std::to_string(id), parse_history(texts[i], id).records});
  }
  return IndexedCorpus::from_histories(std::move(sources));
}

inline Lexicon make_lexicon(const std::vector<std::u32string>& male,
                            const std::vector<std::u32string>& female) {
  std::vector<LexiconEntry> entries;
  for (const auto& t : male) entries.push_back({t, "", "", "", Gender::male, TermCategory::other});
  for (const auto& t : female) entries.push_back({t, "", "", "", Gender::female, TermCategory::other});
  return Lexicon(std::move(entries));
}

// Random raw text over `alphabet`: `paragraphs` lines, each with 1-3
// sentences of 1-8 characters.
inline std::string random_text(std::mt19937_64& rng, std::u32string_view alphabet,
                               std::size_t paragraphs) {
  std::u32string out;
  for (std::size_t p = 0; p < paragraphs; ++p) {
    const std::size_t sentences = 1 + rng() % 3;
    for (std::size_t s = 0; s < sentences; ++s) {
      const std::size_t len = 1 + rng() % 8;
      for (std::size_t i = 0; i < len; ++i) out += alphabet[rng() % alphabet.size()];
      out += U'。';
    }
    out += U'\n';
  }
  return utf8::encode(out);
}

}  // namespace dynhist::fixture
