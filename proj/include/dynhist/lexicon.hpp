#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "dynhist/corpus.hpp"
#include "dynhist/error.hpp"
#include "dynhist/index_io.hpp"
#include "dynhist/term_match.hpp"
#include "dynhist/utf8.hpp"

namespace dynhist {

enum class Gender { male, female };
enum class TermCategory { sex, kin, official, other };

inline std::string_view to_string(Gender g) { return g == Gender::male ? "male" : "female"; }

inline std::string_view to_string(TermCategory c) {
  switch (c) {
    case TermCategory::sex: return "sex";
    case TermCategory::kin: return "kin";
    case TermCategory::official: return "official";
    case TermCategory::other: return "other";
  }
  return "other";
}

struct LexiconEntry {
  std::u32string traditional;  // matched against the corpus
  std::string simplified;
  std::string pinyin;
  std::string gloss;
  Gender gender = Gender::male;
  TermCategory category = TermCategory::other;

  std::string label() const { return utf8::encode(traditional); }
};

// Gender-specific target terms. Immutable once loaded.
class Lexicon {
 public:
  Lexicon() = default;
  explicit Lexicon(std::vector<LexiconEntry> entries);

  std::span<const LexiconEntry> entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }

  // Sorted by code point.
  const std::vector<std::u32string>& male_terms() const { return male_; }
  const std::vector<std::u32string>& female_terms() const { return female_; }
  std::vector<std::u32string> all_terms() const;

  const LexiconEntry* find(std::u32string_view form) const {
    for (const auto& e : entries_) {
      if (e.traditional == form) return &e;
    }
    return nullptr;
  }

 private:
  std::vector<LexiconEntry> entries_;
  std::vector<std::u32string> male_;
  std::vector<std::u32string> female_;
};

inline Lexicon::Lexicon(std::vector<LexiconEntry> entries) : entries_(std::move(entries)) {
  for (const auto& e : entries_) {
    if (e.traditional.empty()) throw ValidationError("lexicon entry with empty traditional form");
    (e.gender == Gender::male ? male_ : female_).push_back(e.traditional);
  }
  std::sort(male_.begin(), male_.end());
  std::sort(female_.begin(), female_.end());
  for (auto* set : {&male_, &female_}) {
    auto dup = std::adjacent_find(set->begin(), set->end());
    if (dup != set->end()) {
      throw ValidationError("duplicate lexicon term " + utf8::encode(*dup));
    }
  }
  std::vector<std::u32string> both;
  std::set_intersection(male_.begin(), male_.end(), female_.begin(), female_.end(),
                        std::back_inserter(both));
  if (!both.empty()) {
    throw ValidationError("term " + utf8::encode(both.front()) + " is tagged both male and female");
  }
}

inline std::vector<std::u32string> Lexicon::all_terms() const {
  std::vector<std::u32string> all = male_;
  all.insert(all.end(), female_.begin(), female_.end());
  std::sort(all.begin(), all.end());
  return all;
}

namespace detail {

inline std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> fields;
  while (true) {
    const auto tab = line.find('\t');
    fields.push_back(line.substr(0, tab));
    if (tab == std::string_view::npos) break;
    line.remove_prefix(tab + 1);
  }
  return fields;
}

}  // namespace detail

// TSV with a header row and six columns:
// traditional, simplified, pinyin, gloss, gender, category.
inline Lexicon parse_lexicon(std::string_view content) {
  std::vector<LexiconEntry> entries;
  std::vector<std::size_t> line_of;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (!content.empty()) {
    ++line_no;
    const auto nl = content.find('\n');
    std::string_view line = content.substr(0, nl);
    content.remove_prefix(nl == std::string_view::npos ? content.size() : nl + 1);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line_no == 1 && line.starts_with("\xEF\xBB\xBF")) line.remove_prefix(3);
    if (line.empty()) continue;

    const auto fields = detail::split_tabs(line);
    if (fields.size() != 6) {
      throw ParseError("expected 6 tab-separated columns, found " + std::to_string(fields.size()),
                       line_no);
    }
    if (!header_seen) {
      header_seen = true;
      continue;
    }
    LexiconEntry e;
    try {
      e.traditional = utf8::decode(fields[0]);
    } catch (const IngestError& err) {
      throw ParseError(err.what(), line_no);
    }
    if (e.traditional.empty()) throw ParseError("empty traditional form", line_no);
    e.simplified = std::string(fields[1]);
    e.pinyin = std::string(fields[2]);
    e.gloss = std::string(fields[3]);
    if (fields[4] == "male") {
      e.gender = Gender::male;
    } else if (fields[4] == "female") {
      e.gender = Gender::female;
    } else {
      throw ParseError("unknown gender tag '" + std::string(fields[4]) + "'", line_no);
    }
    if (fields[5] == "sex") {
      e.category = TermCategory::sex;
    } else if (fields[5] == "kin") {
      e.category = TermCategory::kin;
    } else if (fields[5] == "official") {
      e.category = TermCategory::official;
    } else if (fields[5] == "other") {
      e.category = TermCategory::other;
    } else {
      throw ParseError("unknown category '" + std::string(fields[5]) + "'", line_no);
    }
    for (std::size_t i = 0; i < entries.size(); ++i) {
      if (entries[i].traditional == e.traditional) {
        const bool same = entries[i].gender == e.gender;
        throw ParseError(std::string(same ? "duplicate term " : "term tagged with both genders ") +
                             std::string(fields[0]) + " (first seen on line " +
                             std::to_string(line_of[i]) + ")",
                         line_no);
      }
    }
    entries.push_back(std::move(e));
    line_of.push_back(line_no);
  }
  if (!header_seen) throw ParseError("missing header row", 1);
  return Lexicon(std::move(entries));
}

inline Lexicon load_lexicon(const std::filesystem::path& path) {
  try {
    return parse_lexicon(read_file(path));
  } catch (const ParseError& e) {
    throw Error(path.string() + ": " + e.what());
  }
}

struct TermCoverage {
  std::u32string term;
  Gender gender = Gender::male;
  std::vector<std::uint64_t> per_history;  // chronological order
  std::uint64_t total = 0;
  std::size_t histories_present = 0;
};

// Occurrence counts of every lexicon term in every history. Multi-character
// terms count consecutive-position matches inside one sentence. Rows follow
// code point order of the term, so the report does not depend on file order.
inline std::vector<TermCoverage> coverage_report(const Lexicon& lexicon,
                                                 const IndexedCorpus& corpus) {
  std::vector<const LexiconEntry*> sorted;
  for (const auto& e : lexicon.entries()) sorted.push_back(&e);
  std::sort(sorted.begin(), sorted.end(), [](const LexiconEntry* a, const LexiconEntry* b) {
    return a->traditional < b->traditional;
  });
  std::vector<std::u32string> terms;
  std::vector<TermCoverage> rows;
  for (const auto* e : sorted) {
    terms.push_back(e->traditional);
    rows.push_back({e->traditional, e->gender,
                    std::vector<std::uint64_t>(corpus.histories().size(), 0), 0, 0});
  }
  const TermMatcher matcher(corpus, terms);
  for (const Sentence& s : corpus.sentences()) {
    matcher.for_each_in_sentence(s, [&](std::size_t t, std::size_t) {
      ++rows[t].per_history[s.history];
    });
  }
  for (auto& row : rows) {
    for (auto c : row.per_history) {
      row.total += c;
      if (c > 0) ++row.histories_present;
    }
  }
  return rows;
}

}  // namespace dynhist
