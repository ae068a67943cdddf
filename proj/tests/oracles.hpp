#pragma once

// Slow reference implementations used by the unit tests and the acceptance
// binary. They work from plain record lists and strings and share no code
// with the library beyond the record type.

#include <cmath>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "dynhist/corpus.hpp"

namespace dynhist::oracle {

// A unit as its list of sentences.
using UnitText = std::vector<std::u32string>;

inline std::vector<UnitText> units_of(const std::vector<CharRecord>& records, WindowUnit unit) {
  std::vector<UnitText> out;
  const CharRecord* prev = nullptr;
  for (const auto& r : records) {
    const bool new_paragraph = !prev || !same_paragraph(*prev, r);
    const bool new_sentence = !prev || !same_sentence(*prev, r);
    if (unit == WindowUnit::sentence ? new_sentence : new_paragraph) out.emplace_back();
    if (new_sentence) out.back().emplace_back();
    out.back().back() += r.ch;
    prev = &r;
  }
  return out;
}

// Start offsets (within the flattened unit) of every occurrence of term.
inline std::vector<std::size_t> occurrences(const UnitText& unit, const std::u32string& term) {
  std::vector<std::size_t> out;
  std::size_t base = 0;
  for (const auto& s : unit) {
    for (std::size_t i = 0; i + term.size() <= s.size(); ++i) {
      if (s.compare(i, term.size(), term) == 0) out.push_back(base + i);
    }
    base += s.size();
  }
  return out;
}

inline std::u32string flatten(const UnitText& unit) {
  std::u32string out;
  for (const auto& s : unit) out += s;
  return out;
}

// Unit-presence cells before any cutoff: cells[context][target index].
inline std::map<char32_t, std::vector<std::uint64_t>> cooccurrence_cells(
    const std::vector<CharRecord>& records, const std::vector<std::u32string>& targets,
    WindowUnit unit) {
  std::map<char32_t, std::vector<std::uint64_t>> cells;
  for (const auto& u : units_of(records, unit)) {
    const std::u32string flat = flatten(u);
    for (std::size_t t = 0; t < targets.size(); ++t) {
      const auto starts = occurrences(u, targets[t]);
      if (starts.empty()) continue;
      std::vector<bool> covered(flat.size(), false);
      for (auto s : starts) {
        for (std::size_t k = 0; k < targets[t].size(); ++k) covered[s + k] = true;
      }
      std::set<char32_t> context;
      for (std::size_t p = 0; p < flat.size(); ++p) {
        if (!covered[p]) context.insert(flat[p]);
      }
      for (char32_t c : context) {
        auto& row = cells[c];
        row.resize(targets.size(), 0);
        ++row[t];
      }
    }
  }
  return cells;
}

inline std::map<char32_t, std::vector<std::uint64_t>> matrix_rows(
    const std::vector<CharRecord>& records, const std::vector<std::u32string>& targets,
    WindowUnit unit, std::uint64_t min_corpus, std::size_t min_links) {
  std::map<char32_t, std::uint64_t> freq;
  for (const auto& r : records) ++freq[r.ch];
  auto rows = cooccurrence_cells(records, targets, unit);
  for (auto it = rows.begin(); it != rows.end();) {
    std::size_t links = 0;
    for (auto v : it->second) links += v > 0;
    if (freq[it->first] < min_corpus || links < min_links) {
      it = rows.erase(it);
    } else {
      ++it;
    }
  }
  return rows;
}

struct SharedCounts {
  std::size_t male_only = 0, female_only = 0, shared = 0, unlinked = 0;
};

inline SharedCounts shared_counts(const std::map<char32_t, std::vector<std::uint64_t>>& rows,
                                  const std::vector<std::u32string>& targets,
                                  const std::set<std::u32string>& male,
                                  const std::set<std::u32string>& female) {
  SharedCounts out;
  for (const auto& [c, cells] : rows) {
    std::set<std::u32string> linked;
    for (std::size_t t = 0; t < targets.size(); ++t) {
      if (cells[t] > 0) linked.insert(targets[t]);
    }
    bool m = false, f = false;
    for (const auto& t : linked) {
      m = m || male.count(t);
      f = f || female.count(t);
    }
    if (m && f) ++out.shared;
    else if (m) ++out.male_only;
    else if (f) ++out.female_only;
    else ++out.unlinked;
  }
  return out;
}

struct UnitCoverage {
  std::uint64_t total = 0, female = 0, male = 0, both = 0, any = 0;
};

inline UnitCoverage unit_coverage(const std::vector<CharRecord>& records,
                                  const std::vector<std::u32string>& male,
                                  const std::vector<std::u32string>& female, WindowUnit unit) {
  UnitCoverage out;
  for (const auto& u : units_of(records, unit)) {
    bool m = false, f = false;
    for (const auto& t : male) m = m || !occurrences(u, t).empty();
    for (const auto& t : female) f = f || !occurrences(u, t).empty();
    ++out.total;
    out.male += m;
    out.female += f;
    out.both += m && f;
    out.any += m || f;
  }
  return out;
}

// Focus/reference tallies: a unit is focus when the target occurs in it.
struct Partition {
  std::map<char32_t, std::uint64_t> focus, reference;
  std::uint64_t focus_size = 0, reference_size = 0;
  std::size_t focus_units = 0;
};

inline Partition partition(const std::vector<CharRecord>& records, const std::u32string& target,
                           WindowUnit unit) {
  Partition out;
  for (const auto& u : units_of(records, unit)) {
    const bool hit = !occurrences(u, target).empty();
    out.focus_units += hit;
    for (char32_t c : flatten(u)) {
      ++(hit ? out.focus : out.reference)[c];
      ++(hit ? out.focus_size : out.reference_size);
    }
  }
  return out;
}

// G2 with expected values from the two corpus sizes.
inline long double g2(long double a, long double b, long double c1, long double c2) {
  const long double e1 = c1 * (a + b) / (c1 + c2);
  const long double e2 = c2 * (a + b) / (c1 + c2);
  long double sum = 0;
  if (a > 0) sum += a * std::log(a / e1);
  if (b > 0) sum += b * std::log(b / e2);
  return 2 * sum;
}

// Pearson chi-square on the 2x2 table (a, b / c1-a, c2-b).
inline long double chi2(long double a, long double b, long double c1, long double c2) {
  const long double c = c1 - a, d = c2 - b, n = a + b + c + d;
  const long double ad_bc = a * d - b * c;
  return n * ad_bc * ad_bc / ((a + b) * (c + d) * (a + c) * (b + d));
}

// Closed-form least-squares slope with x = 0..n-1, centred on both means.
inline long double slope(const std::vector<double>& y) {
  const std::size_t n = y.size();
  long double mx = 0, my = 0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += i;
    my += y[i];
  }
  mx /= n;
  my /= n;
  long double num = 0, den = 0;
  for (std::size_t i = 0; i < n; ++i) {
    num += (i - mx) * (y[i] - my);
    den += (i - mx) * (i - mx);
  }
  return num / den;
}

// Best-matching purity of a hard clustering against gold labels (2 classes).
inline double purity(const std::vector<int>& predicted, const std::vector<int>& gold, int clusters) {
  std::map<std::pair<int, int>, std::size_t> table;
  for (std::size_t i = 0; i < gold.size(); ++i) ++table[{predicted[i], gold[i]}];
  std::size_t hits = 0;
  for (int k = 0; k < clusters; ++k) {
    std::size_t best = 0;
    for (int g = 0; g < 2; ++g) best = std::max(best, table[{k, g}]);
    hits += best;
  }
  return static_cast<double>(hits) / static_cast<double>(gold.size());
}

}  // namespace dynhist::oracle
