#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dynhist/corpus.hpp"
#include "dynhist/tsv.hpp"

namespace dynhist {

struct StatsRow {
  int history = 0;
  std::string name;
  std::uint64_t chars = 0;
  std::uint64_t types = 0;
};

struct StatsTable {
  std::vector<StatsRow> rows;
  std::uint64_t total_chars = 0;
  std::uint64_t total_types = 0;  // distinct characters over the whole corpus
};

inline StatsTable corpus_stats(const IndexedCorpus& corpus) {
  StatsTable table;
  for (const auto& h : corpus.histories()) {
    table.rows.push_back({h.id, h.name, h.char_count, h.type_count});
    table.total_chars += h.char_count;
  }
  table.total_types = corpus.vocabulary().size();
  return table;
}

// history<TAB>chars<TAB>types, one row per history plus a "total" row.
inline std::string stats_tsv(const StatsTable& table) {
  std::string out = "history\tchars\ttypes\n";
  auto row = [&](const std::string& name, std::uint64_t chars, std::uint64_t types) {
    out += name;
    out += '\t';
    tsv::append_int(out, chars);
    out += '\t';
    tsv::append_int(out, types);
    out += '\n';
  };
  for (const auto& r : table.rows) row(r.name, r.chars, r.types);
  row("total", table.total_chars, table.total_types);
  return out;
}

}  // namespace dynhist
