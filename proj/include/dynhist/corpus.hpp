#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "dynhist/charclass.hpp"
#include "dynhist/error.hpp"
#include "dynhist/utf8.hpp"

namespace dynhist {

inline constexpr int kMaxHistories = 24;

// One indexed character: history, chapter (juan), paragraph within chapter,
// sentence within paragraph, position within sentence. All 1-based.
struct CharRecord {
  int history = 0;
  int chapter = 0;
  int paragraph = 0;
  int sentence = 0;
  int position = 0;
  char32_t ch = 0;

  friend bool operator==(const CharRecord&, const CharRecord&) = default;
  friend auto operator<=>(const CharRecord&, const CharRecord&) = default;
};

// Same sentence means the same (history, chapter, paragraph, sentence).
inline bool same_sentence(const CharRecord& a, const CharRecord& b) {
  return std::tie(a.history, a.chapter, a.paragraph, a.sentence) ==
         std::tie(b.history, b.chapter, b.paragraph, b.sentence);
}

inline bool same_paragraph(const CharRecord& a, const CharRecord& b) {
  return std::tie(a.history, a.chapter, a.paragraph) ==
         std::tie(b.history, b.chapter, b.paragraph);
}

struct HistoryMeta {
  int id = 0;
  std::string name;
  int chronological_rank = 0;
  std::uint64_t char_count = 0;
  std::uint64_t type_count = 0;
  std::uint64_t paragraph_count = 0;
  std::uint64_t sentence_count = 0;
};

enum class WindowUnit { sentence, paragraph };

inline std::string_view to_string(WindowUnit unit) {
  return unit == WindowUnit::sentence ? "sentence" : "paragraph";
}

inline WindowUnit parse_window_unit(std::string_view text) {
  if (text == "sentence") return WindowUnit::sentence;
  if (text == "paragraph") return WindowUnit::paragraph;
  throw UsageError("unknown window unit '" + std::string(text) +
                   "' (expected sentence or paragraph)");
}

// Records of one history, as produced by ingest or read back from an index.
struct HistorySource {
  int id = 0;
  std::string name;
  std::vector<CharRecord> records;
};

struct Sentence {
  std::uint32_t history = 0;  // slot in IndexedCorpus::histories()
  int chapter = 0;
  int paragraph = 0;
  int sentence = 0;
  std::size_t begin = 0;  // character offsets into IndexedCorpus::chars()
  std::size_t end = 0;
};

// A window instance: one sentence, or one paragraph (a run of sentences).
struct Unit {
  std::uint32_t history = 0;
  std::size_t first_sentence = 0;
  std::size_t last_sentence = 0;  // exclusive
  std::size_t begin = 0;
  std::size_t end = 0;
};

// Immutable, validated per-character corpus. Characters are stored once in
// record order; sentences and paragraphs are index ranges over them. Every
// distinct character also gets a dense id (ids follow code point order).
class IndexedCorpus {
 public:
  IndexedCorpus() = default;

  static IndexedCorpus from_histories(std::vector<HistorySource> sources);

  std::span<const HistoryMeta> histories() const { return histories_; }
  std::span<const char32_t> chars() const { return chars_; }
  std::span<const std::uint32_t> char_ids() const { return char_ids_; }
  std::span<const char32_t> vocabulary() const { return vocabulary_; }
  std::span<const std::uint64_t> char_frequencies() const { return frequencies_; }
  std::span<const Sentence> sentences() const { return sentences_; }

  std::span<const Unit> units(WindowUnit unit) const {
    return unit == WindowUnit::sentence ? sentence_units_ : paragraph_units_;
  }

  std::size_t size() const { return chars_.size(); }
  bool empty() const { return chars_.empty(); }

  std::optional<std::uint32_t> id_of(char32_t ch) const {
    auto it = std::lower_bound(vocabulary_.begin(), vocabulary_.end(), ch);
    if (it == vocabulary_.end() || *it != ch) return std::nullopt;
    return static_cast<std::uint32_t>(it - vocabulary_.begin());
  }

  // Character range [begin, end) belonging to history slot `slot`.
  std::pair<std::size_t, std::size_t> history_range(std::size_t slot) const {
    return {history_begin_[slot], history_begin_[slot + 1]};
  }

  std::vector<CharRecord> records(std::size_t slot) const;
  std::vector<CharRecord> records() const;

 private:
  std::vector<HistoryMeta> histories_;
  std::vector<std::size_t> history_begin_{0};
  std::vector<char32_t> chars_;
  std::vector<std::uint32_t> char_ids_;
  std::vector<char32_t> vocabulary_;
  std::vector<std::uint64_t> frequencies_;
  std::vector<Sentence> sentences_;
  std::vector<Unit> sentence_units_;
  std::vector<Unit> paragraph_units_;
};

// Checks the per-record invariants of one history's record run: ids match,
// strict lexicographic order, contiguous positions, no stripped characters.
inline void validate_records(int history_id, std::span<const CharRecord> records) {
  if (history_id < 1 || history_id > kMaxHistories) {
    throw ValidationError("history id " + std::to_string(history_id) + " outside 1.." +
                          std::to_string(kMaxHistories));
  }
  for (std::size_t i = 0; i < records.size(); ++i) {
    const CharRecord& r = records[i];
    const auto where = [&] { return "record " + std::to_string(i + 1) + " of history " +
                                    std::to_string(history_id); };
    if (r.history != history_id) throw ValidationError(where() + ": wrong history id");
    if (r.chapter < 1 || r.paragraph < 1 || r.sentence < 1 || r.position < 1) {
      throw ValidationError(where() + ": numbering fields must be >= 1");
    }
    if (charclass::is_strippable(r.ch)) {
      throw ValidationError(where() + ": punctuation or whitespace character");
    }
    if (i == 0 || !same_sentence(records[i - 1], r)) {
      if (r.position != 1) throw ValidationError(where() + ": sentence must start at position 1");
      if (i > 0 && !(records[i - 1] < r)) throw ValidationError(where() + ": records out of order");
    } else if (r.position != records[i - 1].position + 1) {
      throw ValidationError(where() + ": positions must be contiguous");
    }
  }
}

inline IndexedCorpus IndexedCorpus::from_histories(std::vector<HistorySource> sources) {
  std::sort(sources.begin(), sources.end(),
            [](const HistorySource& a, const HistorySource& b) { return a.id < b.id; });
  for (std::size_t i = 1; i < sources.size(); ++i) {
    if (sources[i].id == sources[i - 1].id) {
      throw ValidationError("duplicate history id " + std::to_string(sources[i].id));
    }
  }

  IndexedCorpus corpus;
  std::size_t total = 0;
  for (const auto& s : sources) total += s.records.size();
  corpus.chars_.reserve(total);

  for (std::size_t slot = 0; slot < sources.size(); ++slot) {
    const HistorySource& src = sources[slot];
    validate_records(src.id, src.records);

    HistoryMeta meta;
    meta.id = src.id;
    meta.name = src.name;
    meta.chronological_rank = static_cast<int>(slot) + 1;
    meta.char_count = src.records.size();

    const auto h = static_cast<std::uint32_t>(slot);
    const std::size_t base = corpus.chars_.size();
    for (std::size_t i = 0; i < src.records.size(); ++i) {
      const CharRecord& r = src.records[i];
      const std::size_t offset = base + i;
      if (i == 0 || !same_sentence(src.records[i - 1], r)) {
        if (!corpus.sentences_.empty() && corpus.sentences_.back().end == 0) {
          corpus.sentences_.back().end = offset;
        }
        if (i == 0 || !same_paragraph(src.records[i - 1], r)) {
          if (!corpus.paragraph_units_.empty() && corpus.paragraph_units_.back().end == 0) {
            auto& p = corpus.paragraph_units_.back();
            p.end = offset;
            p.last_sentence = corpus.sentences_.size();
          }
          corpus.paragraph_units_.push_back(
              Unit{h, corpus.sentences_.size(), 0, offset, 0});
          ++meta.paragraph_count;
        }
        corpus.sentences_.push_back(Sentence{h, r.chapter, r.paragraph, r.sentence, offset, 0});
        ++meta.sentence_count;
      }
      corpus.chars_.push_back(r.ch);
    }
    const std::size_t end = corpus.chars_.size();
    if (!corpus.sentences_.empty() && corpus.sentences_.back().end == 0) {
      corpus.sentences_.back().end = end;
    }
    if (!corpus.paragraph_units_.empty() && corpus.paragraph_units_.back().end == 0) {
      auto& p = corpus.paragraph_units_.back();
      p.end = end;
      p.last_sentence = corpus.sentences_.size();
    }
    corpus.history_begin_.push_back(end);

    std::vector<char32_t> distinct(corpus.chars_.begin() + static_cast<std::ptrdiff_t>(base),
                                   corpus.chars_.end());
    std::sort(distinct.begin(), distinct.end());
    meta.type_count = static_cast<std::uint64_t>(
        std::unique(distinct.begin(), distinct.end()) - distinct.begin());
    corpus.histories_.push_back(std::move(meta));
  }

  corpus.sentence_units_.reserve(corpus.sentences_.size());
  for (std::size_t i = 0; i < corpus.sentences_.size(); ++i) {
    const Sentence& s = corpus.sentences_[i];
    corpus.sentence_units_.push_back(Unit{s.history, i, i + 1, s.begin, s.end});
  }

  corpus.vocabulary_ = corpus.chars_;
  std::sort(corpus.vocabulary_.begin(), corpus.vocabulary_.end());
  corpus.vocabulary_.erase(std::unique(corpus.vocabulary_.begin(), corpus.vocabulary_.end()),
                           corpus.vocabulary_.end());
  corpus.char_ids_.reserve(corpus.chars_.size());
  corpus.frequencies_.assign(corpus.vocabulary_.size(), 0);
  for (char32_t ch : corpus.chars_) {
    const auto id = *corpus.id_of(ch);
    corpus.char_ids_.push_back(id);
    ++corpus.frequencies_[id];
  }
  return corpus;
}

inline std::vector<CharRecord> IndexedCorpus::records(std::size_t slot) const {
  std::vector<CharRecord> out;
  const auto [begin, end] = history_range(slot);
  out.reserve(end - begin);
  const int id = histories_[slot].id;
  auto first = std::lower_bound(sentences_.begin(), sentences_.end(), begin,
                                [](const Sentence& s, std::size_t off) { return s.begin < off; });
  for (auto it = first; it != sentences_.end() && it->begin < end; ++it) {
    for (std::size_t i = it->begin; i < it->end; ++i) {
      out.push_back(CharRecord{id, it->chapter, it->paragraph, it->sentence,
                               static_cast<int>(i - it->begin + 1), chars_[i]});
    }
  }
  return out;
}

inline std::vector<CharRecord> IndexedCorpus::records() const {
  std::vector<CharRecord> out;
  out.reserve(chars_.size());
  for (std::size_t slot = 0; slot < histories_.size(); ++slot) {
    auto part = records(slot);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

}  // namespace dynhist
