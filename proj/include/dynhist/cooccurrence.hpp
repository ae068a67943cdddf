#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dynhist/corpus.hpp"
#include "dynhist/error.hpp"
#include "dynhist/lexicon.hpp"
#include "dynhist/parallel.hpp"
#include "dynhist/term_match.hpp"
#include "dynhist/tsv.hpp"
#include "dynhist/utf8.hpp"

namespace dynhist {

// unit_presence: a cell counts units where target and context both occur.
// token_pairs: a cell counts (target occurrence, context token) pairs.
enum class CellMode { unit_presence, token_pairs };

// Sparse per-history (target, context) counts for a set of targets. Keys
// are target * vocab_size + context_id; each history's list is sorted.
struct PairCountTable {
  WindowUnit unit = WindowUnit::sentence;
  CellMode mode = CellMode::unit_presence;
  std::vector<std::u32string> targets;
  std::size_t vocab_size = 0;
  std::vector<std::vector<std::pair<std::uint64_t, std::uint64_t>>> per_history;
  // Units of each history containing each target: [history][target].
  std::vector<std::vector<std::uint64_t>> target_units;

  std::size_t target_of(std::uint64_t key) const { return static_cast<std::size_t>(key / vocab_size); }
  std::uint32_t context_of(std::uint64_t key) const {
    return static_cast<std::uint32_t>(key % vocab_size);
  }
};

namespace detail {

// Scratch state for counting one history at a time.
class UnitCounter {
 public:
  UnitCounter(const IndexedCorpus& corpus, const TermMatcher& matcher, std::size_t targets,
              CellMode mode)
      : corpus_(corpus),
        matcher_(matcher),
        mode_(mode),
        vocab_(corpus.vocabulary().size()),
        dense_(targets * vocab_, 0),
        in_unit_(vocab_, 0),
        covered_(vocab_, 0),
        units_per_target_(targets, 0) {}

  void add(const Unit& unit) {
    const auto ids = corpus_.char_ids();
    distinct_.clear();
    for (std::size_t i = unit.begin; i < unit.end; ++i) {
      if (in_unit_[ids[i]]++ == 0) distinct_.push_back(ids[i]);
    }
    matches_.clear();
    matcher_.for_each_in_unit(unit, [&](std::size_t t, std::size_t pos) {
      matches_.emplace_back(t, pos);
    });
    std::sort(matches_.begin(), matches_.end());

    for (std::size_t m = 0; m < matches_.size();) {
      const std::size_t t = matches_[m].first;
      std::size_t last = m;
      positions_.clear();
      for (; last < matches_.size() && matches_[last].first == t; ++last) {
        const std::size_t start = matches_[last].second;
        for (std::size_t k = 0; k < matcher_.term_length(t); ++k) positions_.push_back(start + k);
      }
      const std::uint64_t occurrences = last - m;
      std::sort(positions_.begin(), positions_.end());
      positions_.erase(std::unique(positions_.begin(), positions_.end()), positions_.end());
      for (std::size_t p : positions_) ++covered_[ids[p]];

      std::uint64_t* row = dense_.data() + t * vocab_;
      for (std::uint32_t c : distinct_) {
        const std::uint64_t context_tokens = in_unit_[c] - covered_[c];
        if (context_tokens == 0) continue;
        row[c] += mode_ == CellMode::unit_presence ? 1 : occurrences * context_tokens;
      }
      for (std::size_t p : positions_) covered_[ids[p]] = 0;
      ++units_per_target_[t];
      m = last;
    }
    for (std::uint32_t c : distinct_) in_unit_[c] = 0;
  }

  // Moves the accumulated dense counts into a sorted sparse list and resets.
  std::vector<std::pair<std::uint64_t, std::uint64_t>> drain() {
    std::vector<std::pair<std::uint64_t, std::uint64_t>> out;
    for (std::size_t k = 0; k < dense_.size(); ++k) {
      if (dense_[k] != 0) {
        out.emplace_back(k, dense_[k]);
        dense_[k] = 0;
      }
    }
    return out;
  }

  std::vector<std::uint64_t> drain_target_units() {
    auto out = units_per_target_;
    std::fill(units_per_target_.begin(), units_per_target_.end(), 0);
    return out;
  }

 private:
  const IndexedCorpus& corpus_;
  const TermMatcher& matcher_;
  CellMode mode_;
  std::size_t vocab_;
  std::vector<std::uint64_t> dense_;
  std::vector<std::uint32_t> in_unit_;
  std::vector<std::uint32_t> covered_;
  std::vector<std::uint64_t> units_per_target_;
  std::vector<std::uint32_t> distinct_;
  std::vector<std::pair<std::size_t, std::size_t>> matches_;
  std::vector<std::size_t> positions_;
};

}  // namespace detail

// Counts target/context co-occurrence per history. For each unit holding a
// target, the characters at that target's matched positions are not context
// for that target; every other character of the unit is.
inline PairCountTable count_pairs(const IndexedCorpus& corpus, std::vector<std::u32string> targets,
                                  WindowUnit unit, CellMode mode = CellMode::unit_presence,
                                  Parallelism budget = {}) {
  PairCountTable table;
  table.unit = unit;
  table.mode = mode;
  table.targets = std::move(targets);
  table.vocab_size = std::max<std::size_t>(corpus.vocabulary().size(), 1);
  const std::size_t histories = corpus.histories().size();
  table.per_history.resize(histories);
  table.target_units.resize(histories);

  const TermMatcher matcher(corpus, table.targets);
  const auto units = corpus.units(unit);
  parallel_for(histories, budget, [&](std::size_t h) {
    detail::UnitCounter counter(corpus, matcher, table.targets.size(), mode);
    auto first = std::lower_bound(units.begin(), units.end(), h,
                                  [](const Unit& u, std::size_t slot) { return u.history < slot; });
    for (auto it = first; it != units.end() && it->history == h; ++it) counter.add(*it);
    table.per_history[h] = counter.drain();
    table.target_units[h] = counter.drain_target_units();
  });
  return table;
}

struct MatrixCutoffs {
  std::uint64_t min_corpus_entries = 10;
  std::size_t min_target_links = 5;
};

// Context characters (rows) x target terms (columns). Rows and columns are
// in code point order.
struct SynopticMatrix {
  WindowUnit unit = WindowUnit::sentence;
  CellMode mode = CellMode::unit_presence;
  MatrixCutoffs cutoffs;
  std::vector<std::u32string> targets;
  std::vector<char32_t> contexts;
  std::vector<std::uint64_t> cells;  // row-major, contexts.size() x targets.size()
  std::vector<std::uint64_t> target_units;
  // Context characters with at least one nonzero cell before the cutoffs.
  std::size_t candidate_contexts = 0;

  std::size_t rows() const { return contexts.size(); }
  std::size_t cols() const { return targets.size(); }
  std::uint64_t cell(std::size_t row, std::size_t col) const { return cells[row * cols() + col]; }

  std::size_t links(std::size_t row) const {
    std::size_t n = 0;
    for (std::size_t c = 0; c < cols(); ++c) n += cell(row, c) != 0;
    return n;
  }

  std::optional<std::size_t> column_of(std::u32string_view target) const {
    auto it = std::lower_bound(targets.begin(), targets.end(), target);
    if (it == targets.end() || *it != target) return std::nullopt;
    return static_cast<std::size_t>(it - targets.begin());
  }
};

inline SynopticMatrix build_matrix(const IndexedCorpus& corpus, std::vector<std::u32string> targets,
                                   WindowUnit unit, MatrixCutoffs cutoffs = {},
                                   CellMode mode = CellMode::unit_presence,
                                   Parallelism budget = {}) {
  if (targets.empty()) throw ValidationError("cannot build a co-occurrence matrix without targets");
  std::sort(targets.begin(), targets.end());
  targets.erase(std::unique(targets.begin(), targets.end()), targets.end());

  const PairCountTable pairs = count_pairs(corpus, targets, unit, mode, budget);
  const std::size_t cols = pairs.targets.size();
  const std::size_t vocab = corpus.vocabulary().size();

  // Dense transpose: contexts x targets.
  std::vector<std::uint64_t> dense(vocab * cols, 0);
  for (const auto& list : pairs.per_history) {
    for (const auto& [key, count] : list) {
      dense[pairs.context_of(key) * cols + pairs.target_of(key)] += count;
    }
  }

  SynopticMatrix m;
  m.unit = unit;
  m.mode = mode;
  m.cutoffs = cutoffs;
  m.targets = pairs.targets;
  m.target_units.assign(cols, 0);
  for (const auto& per : pairs.target_units) {
    for (std::size_t t = 0; t < cols; ++t) m.target_units[t] += per[t];
  }
  const auto freq = corpus.char_frequencies();
  const auto vocabulary = corpus.vocabulary();
  for (std::size_t c = 0; c < vocab; ++c) {
    const std::uint64_t* row = dense.data() + c * cols;
    const auto links = static_cast<std::size_t>(std::count_if(row, row + cols, [](auto v) { return v != 0; }));
    if (links == 0) continue;
    ++m.candidate_contexts;
    if (freq[c] < cutoffs.min_corpus_entries || links < cutoffs.min_target_links) continue;
    m.contexts.push_back(vocabulary[c]);
    m.cells.insert(m.cells.end(), row, row + cols);
  }
  return m;
}

inline SynopticMatrix build_matrix(const IndexedCorpus& corpus, const Lexicon& lexicon,
                                   WindowUnit unit, MatrixCutoffs cutoffs = {},
                                   CellMode mode = CellMode::unit_presence,
                                   Parallelism budget = {}) {
  if (lexicon.empty()) throw ValidationError("lexicon is empty");
  return build_matrix(corpus, lexicon.all_terms(), unit, cutoffs, mode, budget);
}

// First row: an empty cell then the target terms; each following row: the
// context character then its counts.
inline std::string matrix_tsv(const SynopticMatrix& m) {
  std::string out;
  for (const auto& t : m.targets) {
    out += '\t';
    out += utf8::encode(t);
  }
  out += '\n';
  for (std::size_t r = 0; r < m.rows(); ++r) {
    utf8::append(out, m.contexts[r]);
    for (std::size_t c = 0; c < m.cols(); ++c) {
      out += '\t';
      tsv::append_int(out, m.cell(r, c));
    }
    out += '\n';
  }
  return out;
}

// ---- shared context between the male and female target groups

struct ContextLinks {
  char32_t context = 0;
  bool male = false;
  bool female = false;
};

struct SharedContextReport {
  std::vector<ContextLinks> rows;
  std::size_t male_only = 0;
  std::size_t female_only = 0;
  std::size_t shared = 0;
  std::size_t unlinked = 0;
  double male_only_fraction = 0.0;  // over all rows
};

inline SharedContextReport shared_context(const SynopticMatrix& m,
                                          std::span<const std::u32string> male_set,
                                          std::span<const std::u32string> female_set) {
  const std::set<std::u32string> male(male_set.begin(), male_set.end());
  const std::set<std::u32string> female(female_set.begin(), female_set.end());
  for (const auto& t : male) {
    if (female.contains(t)) {
      throw ValidationError("term " + utf8::encode(t) + " is in both the male and female sets");
    }
  }
  std::vector<int> group(m.cols(), 0);  // 1 male, 2 female
  for (std::size_t c = 0; c < m.cols(); ++c) {
    if (male.contains(m.targets[c])) group[c] = 1;
    if (female.contains(m.targets[c])) group[c] = 2;
  }
  SharedContextReport report;
  report.rows.reserve(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    ContextLinks links{m.contexts[r]};
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (m.cell(r, c) == 0) continue;
      links.male |= group[c] == 1;
      links.female |= group[c] == 2;
    }
    if (links.male && links.female) {
      ++report.shared;
    } else if (links.male) {
      ++report.male_only;
    } else if (links.female) {
      ++report.female_only;
    } else {
      ++report.unlinked;
    }
    report.rows.push_back(links);
  }
  if (m.rows() > 0) {
    report.male_only_fraction = static_cast<double>(report.male_only) / static_cast<double>(m.rows());
  }
  return report;
}

// ---- target connectivity

enum class Connectivity { star, middle, low };

inline std::string_view to_string(Connectivity c) {
  switch (c) {
    case Connectivity::star: return "star";
    case Connectivity::middle: return "middle";
    case Connectivity::low: return "low";
  }
  return "low";
}

struct TargetConnectivity {
  std::u32string target;
  std::size_t linked_rows = 0;
  double fraction = 0.0;
  Connectivity connectivity = Connectivity::low;
};

struct ConnectivityReport {
  std::vector<TargetConnectivity> targets;
  std::size_t hub_threshold = 95;
  std::size_t hub_rows = 0;  // context rows linked to more than hub_threshold targets
  double hub_fraction = 0.0;
};

struct ConnectivityThresholds {
  double star = 0.8;
  double middle = 0.5;
  std::size_t hub_links = 95;
};

inline ConnectivityReport classify_connectivity(const SynopticMatrix& m,
                                                ConnectivityThresholds th = {}) {
  ConnectivityReport report;
  report.hub_threshold = th.hub_links;
  std::vector<std::size_t> linked(m.cols(), 0);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    std::size_t links = 0;
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (m.cell(r, c) != 0) {
        ++linked[c];
        ++links;
      }
    }
    if (links > th.hub_links) ++report.hub_rows;
  }
  const double rows = static_cast<double>(m.rows());
  for (std::size_t c = 0; c < m.cols(); ++c) {
    TargetConnectivity tc{m.targets[c], linked[c]};
    tc.fraction = m.rows() > 0 ? static_cast<double>(linked[c]) / rows : 0.0;
    tc.connectivity = tc.fraction >= th.star     ? Connectivity::star
                      : tc.fraction >= th.middle ? Connectivity::middle
                                                 : Connectivity::low;
    report.targets.push_back(std::move(tc));
  }
  if (m.rows() > 0) report.hub_fraction = static_cast<double>(report.hub_rows) / rows;
  return report;
}

// ---- how many units mention each gender

struct GenderUnitCoverage {
  std::uint64_t units_total = 0;
  std::uint64_t with_female = 0;
  std::uint64_t with_male = 0;
  std::uint64_t with_both = 0;
  std::uint64_t with_any = 0;
  double female_only_fraction = 0.0;  // (with_female - with_both) / with_female
};

inline GenderUnitCoverage gender_unit_coverage(const IndexedCorpus& corpus, const Lexicon& lexicon,
                                               WindowUnit unit) {
  std::vector<std::u32string> terms;
  std::vector<bool> is_female;
  for (const auto& e : lexicon.entries()) {
    terms.push_back(e.traditional);
    is_female.push_back(e.gender == Gender::female);
  }
  const TermMatcher matcher(corpus, terms);
  GenderUnitCoverage cov;
  for (const Unit& u : corpus.units(unit)) {
    bool female = false;
    bool male = false;
    matcher.for_each_in_unit(u, [&](std::size_t t, std::size_t) {
      (is_female[t] ? female : male) = true;
    });
    ++cov.units_total;
    cov.with_female += female;
    cov.with_male += male;
    cov.with_both += female && male;
    cov.with_any += female || male;
  }
  if (cov.with_female > 0) {
    cov.female_only_fraction = static_cast<double>(cov.with_female - cov.with_both) /
                               static_cast<double>(cov.with_female);
  }
  return cov;
}

}  // namespace dynhist
