#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "dynhist/error.hpp"
#include "dynhist/focus.hpp"
#include "dynhist/tsv.hpp"
#include "dynhist/utf8.hpp"

namespace dynhist {

enum class Measure { g2, chi2 };
enum class Direction { positive, negative };

inline std::string_view to_string(Measure m) { return m == Measure::g2 ? "g2" : "chi2"; }
inline std::string_view to_string(Direction d) {
  return d == Direction::positive ? "positive" : "negative";
}

inline Measure parse_measure(std::string_view text) {
  if (text == "g2") return Measure::g2;
  if (text == "chi2") return Measure::chi2;
  throw UsageError("unknown measure '" + std::string(text) + "' (expected g2 or chi2)");
}

struct KeynessScore {
  double score = 0.0;
  Direction direction = Direction::negative;
};

// Corpus 1 is the reference corpus, corpus 2 the focus corpus.
//   a, b      feature frequency in corpus 1 / corpus 2
//   c, d      non-occurrence: c1_size - a, c2_size - b
struct Contingency {
  std::uint64_t a = 0;
  std::uint64_t b = 0;
  std::uint64_t c1_size = 0;
  std::uint64_t c2_size = 0;

  std::uint64_t c() const { return c1_size - a; }
  std::uint64_t d() const { return c2_size - b; }
  std::uint64_t n() const { return c1_size + c2_size; }
};

namespace detail {

inline void check_contingency(const Contingency& t) {
  if (t.a > t.c1_size || t.b > t.c2_size) {
    throw ValidationError("feature frequency exceeds corpus size");
  }
}

// Positive iff the feature's rate in corpus 2 exceeds its rate in corpus 1.
inline Direction direction_of(const Contingency& t) {
  const auto lhs = static_cast<unsigned __int128>(t.b) * t.c1_size;
  const auto rhs = static_cast<unsigned __int128>(t.a) * t.c2_size;
  return lhs > rhs ? Direction::positive : Direction::negative;
}

inline bool proportional(const Contingency& t) {
  return static_cast<unsigned __int128>(t.b) * t.c1_size ==
         static_cast<unsigned __int128>(t.a) * t.c2_size;
}

}  // namespace detail

// G2 = 2 * (a ln(a/E1) + b ln(b/E2)) with E1 = c1 (a+b) / (c1+c2) and
// E2 = c2 (a+b) / (c1+c2); a zero count contributes zero.
inline KeynessScore log_likelihood(std::uint64_t a, std::uint64_t b, std::uint64_t c1_size,
                                   std::uint64_t c2_size) {
  const Contingency t{a, b, c1_size, c2_size};
  detail::check_contingency(t);
  if (c1_size == 0 || c2_size == 0) throw ValidationError("log-likelihood needs non-empty corpora");
  if (a + b == 0) throw ValidationError("log-likelihood of a feature absent from both corpora");

  KeynessScore out{0.0, detail::direction_of(t)};
  if (detail::proportional(t)) return out;
  const long double total = static_cast<long double>(c1_size) + static_cast<long double>(c2_size);
  const long double joint = static_cast<long double>(a) + static_cast<long double>(b);
  const long double e1 = static_cast<long double>(c1_size) * joint / total;
  const long double e2 = static_cast<long double>(c2_size) * joint / total;
  auto term = [](std::uint64_t x, long double e) -> long double {
    if (x == 0) return 0.0L;
    const auto lx = static_cast<long double>(x);
    return lx * std::log(lx / e);
  };
  out.score = std::max(0.0, static_cast<double>(2.0L * (term(a, e1) + term(b, e2))));
  return out;
}

// X2 = N (ad - bc)^2 / ((a+b)(c+d)(a+c)(b+d)) on the 2x2 table above.
inline KeynessScore chi_square(const Contingency& t) {
  detail::check_contingency(t);
  const std::uint64_t a = t.a, b = t.b, c = t.c(), d = t.d();
  if (a + b == 0 || c + d == 0 || a + c == 0 || b + d == 0) {
    throw ValidationError("chi-square undefined: a contingency margin is zero");
  }
  KeynessScore out{0.0, detail::direction_of(t)};
  const __int128 cross = static_cast<__int128>(a) * static_cast<__int128>(d) -
                         static_cast<__int128>(b) * static_cast<__int128>(c);
  if (cross == 0) return out;
  const long double diff = static_cast<long double>(cross);
  const long double numerator = static_cast<long double>(t.n()) * diff * diff;
  const long double denominator = static_cast<long double>(a + b) * static_cast<long double>(c + d) *
                                  static_cast<long double>(a + c) * static_cast<long double>(b + d);
  out.score = static_cast<double>(numerator / denominator);
  return out;
}

inline KeynessScore keyness(Measure m, const Contingency& t) {
  return m == Measure::g2 ? log_likelihood(t.a, t.b, t.c1_size, t.c2_size) : chi_square(t);
}

struct KeynessRow {
  char32_t ch = 0;
  std::uint64_t focus_freq = 0;      // b
  std::uint64_t reference_freq = 0;  // a
  Measure measure = Measure::chi2;
  double score = 0.0;
  Direction direction = Direction::positive;
  std::size_t rank = 0;
};

struct KeywordTable {
  Measure measure = Measure::chi2;
  std::vector<KeynessRow> ranked;  // positive rows, score descending

  std::vector<KeynessRow> alphabetical() const {
    auto out = ranked;
    std::sort(out.begin(), out.end(),
              [](const KeynessRow& x, const KeynessRow& y) { return x.ch < y.ch; });
    return out;
  }
};

struct KeywordOptions {
  std::uint64_t min_freq = 5;  // minimum focus frequency
  std::size_t top_k = 30;
};

// Scores every character with focus frequency >= min_freq and keeps the
// top_k positive (overused in focus) rows. Ties break by code point.
inline KeywordTable keyword_table(const FocusSplit& split, Measure measure,
                                  KeywordOptions options = {}) {
  KeywordTable table;
  table.measure = measure;
  if (split.focus_size == 0 || split.reference_size == 0) return table;
  for (std::size_t i = 0; i < split.vocabulary.size(); ++i) {
    const std::uint64_t b = split.focus_counts[i];
    if (b == 0 || b < options.min_freq) continue;
    const Contingency t{split.reference_counts[i], b, split.reference_size, split.focus_size};
    if (measure == Measure::chi2 && t.c() + t.d() == 0) continue;
    const KeynessScore s = keyness(measure, t);
    if (s.direction != Direction::positive) continue;
    table.ranked.push_back({split.vocabulary[i], b, t.a, measure, s.score, s.direction, 0});
  }
  std::sort(table.ranked.begin(), table.ranked.end(), [](const KeynessRow& x, const KeynessRow& y) {
    if (x.score != y.score) return x.score > y.score;
    return x.ch < y.ch;
  });
  if (table.ranked.size() > options.top_k) table.ranked.resize(options.top_k);
  for (std::size_t i = 0; i < table.ranked.size(); ++i) table.ranked[i].rank = i + 1;
  return table;
}

// char, focus_freq, ref_freq, measure, score, direction, rank
inline std::string keyword_tsv(std::span<const KeynessRow> rows) {
  std::string out = "char\tfocus_freq\tref_freq\tmeasure\tscore\tdirection\trank\n";
  for (const auto& r : rows) {
    utf8::append(out, r.ch);
    out += '\t';
    tsv::append_int(out, r.focus_freq);
    out += '\t';
    tsv::append_int(out, r.reference_freq);
    out += '\t';
    out += to_string(r.measure);
    out += '\t';
    out += tsv::fixed(r.score);
    out += '\t';
    out += to_string(r.direction);
    out += '\t';
    tsv::append_int(out, r.rank);
    out += '\n';
  }
  return out;
}

}  // namespace dynhist
