#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "dynhist/charclass.hpp"
#include "dynhist/corpus.hpp"
#include "dynhist/error.hpp"
#include "dynhist/utf8.hpp"

namespace dynhist {

struct IngestConfig {
  // Each of these closes the current sentence. A run of delimiters and
  // stripped marks (closing quotes, brackets) yields a single boundary.
  std::u32string sentence_delims = U"。！？；";
  // Characters exempt from punctuation/whitespace stripping.
  std::u32string keep_chars;

  bool is_delim(char32_t cp) const {
    return sentence_delims.find(cp) != std::u32string::npos;
  }
  bool is_stripped(char32_t cp) const {
    if (is_delim(cp)) return true;
    if (keep_chars.find(cp) != std::u32string::npos) return false;
    return charclass::is_strippable(cp);
  }
};

struct IngestWarning {
  std::size_t line = 0;
  std::string message;
};

struct ParsedHistory {
  std::vector<CharRecord> records;
  std::vector<IngestWarning> warnings;
};

namespace detail {

// A chapter marker is a line holding only ASCII or fullwidth digits,
// optionally wrapped in asterisks and surrounding whitespace ("*001*").
inline bool parse_chapter_marker(std::u32string_view line, int& chapter) {
  auto is_trim = [](char32_t c) { return charclass::is_space(c) || c == U'*' || c == U'＊'; };
  while (!line.empty() && is_trim(line.front())) line.remove_prefix(1);
  while (!line.empty() && is_trim(line.back())) line.remove_suffix(1);
  if (line.empty() || line.size() > 9) return false;
  int value = 0;
  for (char32_t c : line) {
    int digit;
    if (c >= U'0' && c <= U'9') {
      digit = static_cast<int>(c - U'0');
    } else if (c >= U'０' && c <= U'９') {
      digit = static_cast<int>(c - U'０');
    } else {
      return false;
    }
    value = value * 10 + digit;
  }
  chapter = value;
  return true;
}

}  // namespace detail

// Parses one raw history file into index records. Paragraphs are source
// lines within a chapter; numbering restarts at 1 for every chapter, every
// paragraph and every sentence.
inline ParsedHistory parse_history(std::string_view raw_text, int history_id,
                                   const IngestConfig& config = {}) {
  if (history_id < 1 || history_id > kMaxHistories) {
    throw ValidationError("history id " + std::to_string(history_id) + " outside 1.." +
                          std::to_string(kMaxHistories));
  }
  ParsedHistory out;
  if (raw_text.empty()) return out;

  const std::u32string text = utf8::decode(raw_text);
  int chapter = 0;  // 0 until a marker or the first indexed character
  int paragraph = 0;
  std::size_t line_no = 0;
  std::size_t line_start = 0;

  while (line_start <= text.size()) {
    std::size_t line_end = text.find(U'\n', line_start);
    if (line_end == std::u32string::npos) line_end = text.size();
    std::u32string_view line(text.data() + line_start, line_end - line_start);
    if (!line.empty() && line.back() == U'\r') line.remove_suffix(1);
    ++line_no;

    int marker = 0;
    if (detail::parse_chapter_marker(line, marker)) {
      if (marker > chapter) {
        chapter = marker;
        paragraph = 0;
      } else {
        out.warnings.push_back(
            {line_no, "chapter marker " + std::to_string(marker) +
                          " does not increase on chapter " + std::to_string(std::max(chapter, 1)) +
                          "; text continues the current chapter"});
      }
    } else {
      bool in_paragraph = false;
      bool boundary_pending = false;
      int sentence = 1;
      int position = 0;
      for (char32_t cp : line) {
        if (config.is_delim(cp)) {
          if (position > 0) boundary_pending = true;
          continue;
        }
        if (config.is_stripped(cp)) continue;
        if (!in_paragraph) {
          if (chapter == 0) chapter = 1;
          ++paragraph;
          in_paragraph = true;
        }
        if (boundary_pending) {
          ++sentence;
          position = 0;
          boundary_pending = false;
        }
        ++position;
        out.records.push_back(CharRecord{history_id, chapter, paragraph, sentence, position, cp});
      }
    }
    if (line_end == text.size()) break;
    line_start = line_end + 1;
  }
  return out;
}

}  // namespace dynhist
