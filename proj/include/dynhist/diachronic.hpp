#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "dynhist/cooccurrence.hpp"
#include "dynhist/corpus.hpp"
#include "dynhist/error.hpp"
#include "dynhist/lexicon.hpp"
#include "dynhist/tsv.hpp"
#include "dynhist/utf8.hpp"

namespace dynhist {

enum class TrendClass { up, down, undefined, weak, neutral };

inline std::string_view to_string(TrendClass c) {
  switch (c) {
    case TrendClass::up: return "up";
    case TrendClass::down: return "down";
    case TrendClass::undefined: return "undefined";
    case TrendClass::weak: return "weak";
    case TrendClass::neutral: return "neutral";
  }
  return "neutral";
}

// Least-squares slope of y against x = 0, 1, ..., n-1.
inline double slope(std::span<const double> y) {
  const std::size_t n = y.size();
  if (n < 2) return 0.0;
  const double mean_x = static_cast<double>(n - 1) / 2.0;
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = static_cast<double>(i) - mean_x;
    sxy += dx * y[i];
    sxx += dx * dx;
  }
  return sxy / sxx;
}

// Bands: up > 1.5, down < -1.5, undefined 1 < |s| <= 1.5,
// weak 0.5 < |s| <= 1, neutral |s| <= 0.5.
inline TrendClass classify_trend(double s) {
  if (!std::isfinite(s)) throw ValidationError("slope is not finite");
  const double m = std::fabs(s);
  if (m <= 0.5) return TrendClass::neutral;
  if (m <= 1.0) return TrendClass::weak;
  if (m <= 1.5) return TrendClass::undefined;
  return s > 0 ? TrendClass::up : TrendClass::down;
}

// round(raw / history_chars * scale), halves rounded up, in exact integer
// arithmetic.
inline std::uint64_t normalize_count(std::uint64_t raw, std::uint64_t history_chars,
                                     std::uint64_t scale) {
  if (raw == 0 || history_chars == 0) return 0;
  const unsigned __int128 num = static_cast<unsigned __int128>(raw) * scale * 2 + history_chars;
  return static_cast<std::uint64_t>(num / (static_cast<unsigned __int128>(history_chars) * 2));
}

struct TrendOptions {
  std::uint64_t cutoff = 4;  // keep a pair iff some history has raw > cutoff
  std::uint64_t scale = 100000;
  CellMode mode = CellMode::unit_presence;
};

struct TrendSeries {
  std::u32string target;
  char32_t context = 0;
  WindowUnit unit = WindowUnit::sentence;
  std::vector<std::uint64_t> raw;         // chronological order
  std::vector<std::uint64_t> normalized;  // same length as raw
  double slope = 0.0;
  TrendClass trend = TrendClass::neutral;
};

namespace detail {

inline TrendSeries make_series(std::u32string target, char32_t context, WindowUnit unit,
                               std::vector<std::uint64_t> raw, const IndexedCorpus& corpus,
                               std::uint64_t scale) {
  TrendSeries s{std::move(target), context, unit, std::move(raw), {}, 0.0, TrendClass::neutral};
  const auto histories = corpus.histories();
  s.normalized.resize(s.raw.size());
  std::vector<double> y(s.raw.size());
  for (std::size_t i = 0; i < s.raw.size(); ++i) {
    s.normalized[i] = normalize_count(s.raw[i], histories[i].char_count, scale);
    y[i] = static_cast<double>(s.normalized[i]);
  }
  s.slope = slope(y);
  s.trend = classify_trend(s.slope);
  return s;
}

inline bool passes_cutoff(std::span<const std::uint64_t> raw, std::uint64_t cutoff) {
  return std::any_of(raw.begin(), raw.end(), [&](std::uint64_t v) { return v > cutoff; });
}

}  // namespace detail

// Series for one (target, context) pair; nullopt when no history exceeds
// the cutoff.
inline std::optional<TrendSeries> pair_series(const IndexedCorpus& corpus, const Lexicon& lexicon,
                                              std::u32string_view target, char32_t context,
                                              WindowUnit unit, TrendOptions options = {}) {
  if (lexicon.find(target) == nullptr) {
    throw ValidationError("unknown target " + utf8::encode(std::u32string(target)));
  }
  std::vector<std::uint64_t> raw(corpus.histories().size(), 0);
  if (const auto cid = corpus.id_of(context)) {
    const auto table = count_pairs(corpus, {std::u32string(target)}, unit, options.mode);
    for (std::size_t h = 0; h < table.per_history.size(); ++h) {
      const auto& list = table.per_history[h];
      auto it = std::lower_bound(list.begin(), list.end(), std::pair<std::uint64_t, std::uint64_t>{*cid, 0});
      if (it != list.end() && it->first == *cid) raw[h] = it->second;
    }
  }
  if (!detail::passes_cutoff(raw, options.cutoff)) return std::nullopt;
  return detail::make_series(std::u32string(target), context, unit, std::move(raw), corpus,
                             options.scale);
}

struct TrendReport {
  WindowUnit unit = WindowUnit::sentence;
  TrendOptions options;
  std::vector<std::string> history_names;
  std::size_t nonzero_pairs = 0;  // pairs with any co-occurrence, before the cutoff
  std::vector<TrendSeries> rows;  // pairs passing the cutoff, ordered by (target, context)

  std::vector<const TrendSeries*> directional() const {
    std::vector<const TrendSeries*> out;
    for (const auto& r : rows) {
      if (r.trend == TrendClass::up || r.trend == TrendClass::down) out.push_back(&r);
    }
    return out;
  }
};

inline TrendReport trend_report(const IndexedCorpus& corpus, std::vector<std::u32string> targets,
                                WindowUnit unit, TrendOptions options = {},
                                Parallelism budget = {}) {
  TrendReport report;
  report.unit = unit;
  report.options = options;
  for (const auto& h : corpus.histories()) report.history_names.push_back(h.name);
  if (targets.empty()) return report;
  std::sort(targets.begin(), targets.end());
  targets.erase(std::unique(targets.begin(), targets.end()), targets.end());

  const PairCountTable table = count_pairs(corpus, targets, unit, options.mode, budget);
  const std::size_t histories = table.per_history.size();

  // (key, history, count), grouped by key.
  std::vector<std::tuple<std::uint64_t, std::uint32_t, std::uint64_t>> entries;
  for (std::size_t h = 0; h < histories; ++h) {
    for (const auto& [key, count] : table.per_history[h]) {
      entries.emplace_back(key, static_cast<std::uint32_t>(h), count);
    }
  }
  std::sort(entries.begin(), entries.end());

  const auto vocabulary = corpus.vocabulary();
  for (std::size_t i = 0; i < entries.size();) {
    const std::uint64_t key = std::get<0>(entries[i]);
    std::vector<std::uint64_t> raw(histories, 0);
    for (; i < entries.size() && std::get<0>(entries[i]) == key; ++i) {
      raw[std::get<1>(entries[i])] = std::get<2>(entries[i]);
    }
    ++report.nonzero_pairs;
    if (!detail::passes_cutoff(raw, options.cutoff)) continue;
    report.rows.push_back(detail::make_series(table.targets[table.target_of(key)],
                                              vocabulary[table.context_of(key)], unit,
                                              std::move(raw), corpus, options.scale));
  }
  return report;
}

inline TrendReport trend_report(const IndexedCorpus& corpus, const Lexicon& lexicon,
                                WindowUnit unit, TrendOptions options = {},
                                Parallelism budget = {}) {
  return trend_report(corpus, lexicon.all_terms(), unit, options, budget);
}

// target, context, unit, raw_1..raw_n, norm_1..norm_n, slope, class
inline std::string trend_tsv(const TrendReport& report, bool directional_only = false) {
  const std::size_t n = report.history_names.size();
  std::string out = "target\tcontext\tunit";
  for (std::size_t i = 1; i <= n; ++i) out += "\traw_" + std::to_string(i);
  for (std::size_t i = 1; i <= n; ++i) out += "\tnorm_" + std::to_string(i);
  out += "\tslope\tclass\n";
  for (const auto& r : report.rows) {
    if (directional_only && r.trend != TrendClass::up && r.trend != TrendClass::down) continue;
    out += utf8::encode(r.target);
    out += '\t';
    utf8::append(out, r.context);
    out += '\t';
    out += to_string(r.unit);
    for (auto v : r.raw) {
      out += '\t';
      tsv::append_int(out, v);
    }
    for (auto v : r.normalized) {
      out += '\t';
      tsv::append_int(out, v);
    }
    out += '\t';
    out += tsv::fixed(r.slope);
    out += '\t';
    out += to_string(r.trend);
    out += '\n';
  }
  return out;
}

}  // namespace dynhist
