#pragma once

#include <charconv>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "dynhist/corpus.hpp"
#include "dynhist/error.hpp"
#include "dynhist/ingest.hpp"
#include "dynhist/parallel.hpp"
#include "dynhist/utf8.hpp"

namespace dynhist {

namespace fs = std::filesystem;

inline std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return std::move(buf).str();
}

inline void write_file(const fs::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path.string());
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw Error("write failed for " + path.string());
}

// ---- index line format: history,chapter,paragraph,sentence,position,char

inline void append_record(std::string& out, const CharRecord& r) {
  char buf[64];
  char* p = buf;
  for (int v : {r.history, r.chapter, r.paragraph, r.sentence, r.position}) {
    p = std::to_chars(p, buf + sizeof buf, v).ptr;
    *p++ = ',';
  }
  out.append(buf, p);
  utf8::append(out, r.ch);
  out.push_back('\n');
}

inline std::string format_record(const CharRecord& r) {
  std::string line;
  append_record(line, r);
  line.pop_back();
  return line;
}

inline CharRecord parse_record_line(std::string_view line, std::size_t line_no) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  CharRecord r;
  int* numeric[] = {&r.history, &r.chapter, &r.paragraph, &r.sentence, &r.position};
  for (int* field : numeric) {
    const auto comma = line.find(',');
    if (comma == std::string_view::npos) throw ParseError("expected 6 comma-separated fields", line_no);
    const std::string_view text = line.substr(0, comma);
    const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), *field);
    if (text.empty() || ec != std::errc{} || end != text.data() + text.size()) {
      throw ParseError("non-numeric field '" + std::string(text) + "'", line_no);
    }
    line.remove_prefix(comma + 1);
  }
  if (line.find(',') != std::string_view::npos) {
    throw ParseError("expected 6 comma-separated fields", line_no);
  }
  if (!utf8::decode_single(line, r.ch)) {
    throw ParseError("last field must be exactly one character", line_no);
  }
  const auto fail = [&](const std::string& what) {
    throw ValidationError("line " + std::to_string(line_no) + ": " + what);
  };
  if (r.history < 1 || r.history > kMaxHistories) fail("history must be in 1..24");
  if (r.chapter < 1) fail("chapter must be >= 1");
  if (r.paragraph < 1) fail("paragraph must be >= 1");
  if (r.sentence < 1) fail("sentence must be >= 1");
  if (r.position < 1) fail("position must be >= 1");
  return r;
}

inline std::string write_index(std::span<const CharRecord> records) {
  std::string out;
  out.reserve(records.size() * 18);
  for (const auto& r : records) append_record(out, r);
  return out;
}

inline std::vector<CharRecord> read_index(std::string_view content) {
  std::vector<CharRecord> records;
  records.reserve(content.size() / 16);
  std::size_t line_no = 0;
  while (!content.empty()) {
    ++line_no;
    const auto nl = content.find('\n');
    const std::string_view line = content.substr(0, nl);
    if (!line.empty() && line != "\r") records.push_back(parse_record_line(line, line_no));
    if (nl == std::string_view::npos) break;
    content.remove_prefix(nl + 1);
  }
  return records;
}

// ---- file naming: raw "NN_name_full.txt", index "NN_name_index.txt"

struct HistoryFileName {
  int id = 0;
  std::string name;
};

inline std::optional<HistoryFileName> parse_history_file_name(std::string_view file,
                                                              std::string_view suffix) {
  if (file.size() <= 3 + suffix.size() || !file.ends_with(suffix)) return std::nullopt;
  const auto underscore = file.find('_');
  if (underscore == std::string_view::npos || underscore == 0) return std::nullopt;
  HistoryFileName out;
  const std::string_view digits = file.substr(0, underscore);
  const auto [end, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), out.id);
  if (ec != std::errc{} || end != digits.data() + digits.size()) return std::nullopt;
  const std::size_t name_end = file.size() - suffix.size();
  if (name_end <= underscore + 1) return std::nullopt;
  out.name = std::string(file.substr(underscore + 1, name_end - underscore - 1));
  return out;
}

inline std::string index_file_name(int id, std::string_view name) {
  std::string out = id < 10 ? "0" : "";
  out += std::to_string(id);
  out += '_';
  out += name;
  out += "_index.txt";
  return out;
}

inline constexpr std::string_view kRawSuffix = "_full.txt";
inline constexpr std::string_view kIndexSuffix = "_index.txt";

struct HistoryFile {
  HistoryFileName name;
  fs::path path;
};

inline std::vector<HistoryFile> list_history_files(const fs::path& dir, std::string_view suffix) {
  if (!fs::is_directory(dir)) throw Error("not a directory: " + dir.string());
  std::vector<HistoryFile> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    if (auto parsed = parse_history_file_name(entry.path().filename().string(), suffix)) {
      files.push_back({std::move(*parsed), entry.path()});
    }
  }
  std::sort(files.begin(), files.end(),
            [](const HistoryFile& a, const HistoryFile& b) { return a.name.id < b.name.id; });
  for (std::size_t i = 1; i < files.size(); ++i) {
    if (files[i].name.id == files[i - 1].name.id) {
      throw ValidationError("two files for history " + std::to_string(files[i].name.id) +
                            " in " + dir.string());
    }
  }
  return files;
}

struct IngestSummary {
  HistoryFileName history;
  std::size_t records = 0;
  std::vector<IngestWarning> warnings;
};

// Converts every NN_name_full.txt under `input` into NN_name_index.txt under
// `output`. Files are processed independently; results are ordered by id.
inline std::vector<IngestSummary> ingest_directory(const fs::path& input, const fs::path& output,
                                                   const IngestConfig& config,
                                                   Parallelism budget = {}) {
  const auto files = list_history_files(input, kRawSuffix);
  fs::create_directories(output);
  std::vector<IngestSummary> summaries(files.size());
  parallel_for(files.size(), budget, [&](std::size_t i) {
    const HistoryFile& f = files[i];
    std::string raw;
    ParsedHistory parsed;
    try {
      raw = read_file(f.path);
      parsed = parse_history(raw, f.name.id, config);
    } catch (const IngestError& e) {
      throw Error(f.path.string() + ": " + e.what());
    }
    write_file(output / index_file_name(f.name.id, f.name.name), write_index(parsed.records));
    summaries[i] = {f.name, parsed.records.size(), std::move(parsed.warnings)};
  });
  return summaries;
}

inline IndexedCorpus load_index_directory(const fs::path& dir, Parallelism budget = {}) {
  if (!fs::exists(dir)) throw Error("index directory does not exist: " + dir.string());
  const auto files = list_history_files(dir, kIndexSuffix);
  std::vector<HistorySource> sources(files.size());
  parallel_for(files.size(), budget, [&](std::size_t i) {
    const HistoryFile& f = files[i];
    try {
      sources[i] = HistorySource{f.name.id, f.name.name, read_index(read_file(f.path))};
    } catch (const Error& e) {
      throw Error(f.path.string() + ": " + e.what());
    }
  });
  return IndexedCorpus::from_histories(std::move(sources));
}

}  // namespace dynhist
