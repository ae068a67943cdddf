#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dynhist/error.hpp"
#include "dynhist/focus.hpp"
#include "dynhist/tsv.hpp"
#include "dynhist/utf8.hpp"

namespace dynhist {

// A focus unit as a bag of characters, sorted by code point.
struct BagDocument {
  std::size_t unit = 0;  // index into FocusSplit::focus_units
  std::vector<std::pair<char32_t, std::uint32_t>> counts;

  std::size_t tokens() const {
    std::size_t n = 0;
    for (const auto& [ch, c] : counts) n += c;
    return n;
  }
};

// Drops stop characters (except those belonging to the target term) and
// characters whose focus-corpus frequency is below min_freq. Documents that
// end up empty are dropped.
inline std::vector<BagDocument> prepare_documents(const FocusSplit& split,
                                                  std::u32string_view stop_chars,
                                                  std::uint64_t min_freq = 5) {
  auto keep = [&](char32_t ch) {
    if (split.target.find(ch) != std::u32string::npos) return true;
    if (stop_chars.find(ch) != std::u32string_view::npos) return false;
    return split.focus_count(ch) >= min_freq;
  };
  std::vector<BagDocument> docs;
  for (std::size_t u = 0; u < split.focus_units.size(); ++u) {
    std::u32string chars = split.focus_units[u];
    std::sort(chars.begin(), chars.end());
    BagDocument doc{u, {}};
    for (std::size_t i = 0; i < chars.size();) {
      std::size_t j = i;
      while (j < chars.size() && chars[j] == chars[i]) ++j;
      if (keep(chars[i])) doc.counts.emplace_back(chars[i], static_cast<std::uint32_t>(j - i));
      i = j;
    }
    if (!doc.counts.empty()) docs.push_back(std::move(doc));
  }
  if (docs.empty()) throw ValidationError("no document survives stop-character and frequency filtering");
  return docs;
}

struct LdaConfig {
  std::size_t topics = 5;
  double alpha = -1.0;  // <= 0 selects 50 / topics
  double beta = 0.01;
  std::size_t iterations = 1000;
  std::uint64_t seed = 42;
  std::size_t top_n = 10;
};

struct TopicWord {
  char32_t ch = 0;
  double weight = 0.0;
};

// Collapsed Gibbs sampler state plus the summary the caller usually wants.
struct TopicModel {
  std::size_t topics = 0;
  double alpha = 0.0;
  double beta = 0.0;
  std::uint64_t seed = 0;
  std::vector<char32_t> vocabulary;
  std::vector<std::vector<std::uint32_t>> doc_tokens;   // word ids per document
  std::vector<std::vector<std::uint32_t>> assignments;  // topic per token
  std::vector<std::uint64_t> topic_word;                // topics x vocabulary
  std::vector<std::uint64_t> topic_totals;
  std::vector<std::uint64_t> doc_topic;                 // documents x topics
  std::vector<std::vector<TopicWord>> top;              // per topic, weight descending

  std::size_t token_count() const {
    std::size_t n = 0;
    for (const auto& d : doc_tokens) n += d.size();
    return n;
  }
};

using SweepObserver = std::function<void(std::size_t iteration, const TopicModel&)>;

namespace detail {

// 53-bit uniform double in [0, 1) from a 64-bit engine; unlike
// std::uniform_real_distribution this is identical on every library.
inline double unit_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline void summarize_topics(TopicModel& m, std::size_t top_n) {
  const std::size_t v = m.vocabulary.size();
  m.top.assign(m.topics, {});
  for (std::size_t k = 0; k < m.topics; ++k) {
    std::vector<std::uint32_t> order(v);
    for (std::uint32_t w = 0; w < v; ++w) order[w] = w;
    const std::uint64_t* row = m.topic_word.data() + k * v;
    const std::size_t n = std::min(top_n, v);
    std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(n), order.end(),
                      [&](std::uint32_t x, std::uint32_t y) {
                        if (row[x] != row[y]) return row[x] > row[y];
                        return x < y;
                      });
    const double denom = static_cast<double>(m.topic_totals[k]) + static_cast<double>(v) * m.beta;
    for (std::size_t i = 0; i < n; ++i) {
      const auto w = order[i];
      m.top[k].push_back({m.vocabulary[w], (static_cast<double>(row[w]) + m.beta) / denom});
    }
  }
}

}  // namespace detail

inline TopicModel lda_gibbs(std::span<const BagDocument> docs, const LdaConfig& config,
                            const SweepObserver& observer = {}) {
  if (config.topics < 1) throw ValidationError("topic count must be >= 1");
  if (config.iterations < 1) throw ValidationError("iteration count must be >= 1");
  if (docs.empty()) throw ValidationError("no documents to model");
  if (config.beta <= 0.0) throw ValidationError("beta must be positive");

  TopicModel m;
  m.topics = config.topics;
  m.alpha = config.alpha > 0.0 ? config.alpha : 50.0 / static_cast<double>(config.topics);
  m.beta = config.beta;
  m.seed = config.seed;

  for (const auto& d : docs) {
    for (const auto& [ch, c] : d.counts) m.vocabulary.push_back(ch);
  }
  std::sort(m.vocabulary.begin(), m.vocabulary.end());
  m.vocabulary.erase(std::unique(m.vocabulary.begin(), m.vocabulary.end()), m.vocabulary.end());
  if (m.vocabulary.empty()) throw ValidationError("vocabulary is empty");
  const std::size_t v = m.vocabulary.size();
  const std::size_t k_topics = m.topics;

  for (const auto& d : docs) {
    std::vector<std::uint32_t> tokens;
    for (const auto& [ch, c] : d.counts) {
      const auto w = static_cast<std::uint32_t>(
          std::lower_bound(m.vocabulary.begin(), m.vocabulary.end(), ch) - m.vocabulary.begin());
      tokens.insert(tokens.end(), c, w);
    }
    m.doc_tokens.push_back(std::move(tokens));
  }

  std::mt19937_64 rng(config.seed);
  m.topic_word.assign(k_topics * v, 0);
  m.topic_totals.assign(k_topics, 0);
  m.doc_topic.assign(docs.size() * k_topics, 0);
  m.assignments.resize(docs.size());
  for (std::size_t d = 0; d < docs.size(); ++d) {
    auto& z = m.assignments[d];
    z.resize(m.doc_tokens[d].size());
    for (std::size_t i = 0; i < z.size(); ++i) {
      const auto k = std::min<std::size_t>(
          static_cast<std::size_t>(detail::unit_uniform(rng) * static_cast<double>(k_topics)),
          k_topics - 1);
      z[i] = static_cast<std::uint32_t>(k);
      ++m.topic_word[k * v + m.doc_tokens[d][i]];
      ++m.topic_totals[k];
      ++m.doc_topic[d * k_topics + k];
    }
  }

  const double v_beta = static_cast<double>(v) * m.beta;
  std::vector<double> cumulative(k_topics);
  for (std::size_t iter = 1; iter <= config.iterations; ++iter) {
    for (std::size_t d = 0; d < docs.size(); ++d) {
      const auto& tokens = m.doc_tokens[d];
      auto& z = m.assignments[d];
      std::uint64_t* dt = m.doc_topic.data() + d * k_topics;
      for (std::size_t i = 0; i < tokens.size(); ++i) {
        const std::uint32_t w = tokens[i];
        const std::uint32_t old = z[i];
        --m.topic_word[old * v + w];
        --m.topic_totals[old];
        --dt[old];
        double total = 0.0;
        for (std::size_t k = 0; k < k_topics; ++k) {
          total += (static_cast<double>(dt[k]) + m.alpha) *
                   (static_cast<double>(m.topic_word[k * v + w]) + m.beta) /
                   (static_cast<double>(m.topic_totals[k]) + v_beta);
          cumulative[k] = total;
        }
        const double u = detail::unit_uniform(rng) * total;
        std::size_t pick = 0;
        while (pick + 1 < k_topics && cumulative[pick] <= u) ++pick;
        z[i] = static_cast<std::uint32_t>(pick);
        ++m.topic_word[pick * v + w];
        ++m.topic_totals[pick];
        ++dt[pick];
      }
    }
    if (observer) observer(iter, m);
  }
  detail::summarize_topics(m, config.top_n);
  return m;
}

// Union of every topic's top characters, duplicates removed, code point order.
inline std::vector<char32_t> merge_topics(std::span<const std::vector<char32_t>> topics) {
  std::vector<char32_t> merged;
  for (const auto& t : topics) merged.insert(merged.end(), t.begin(), t.end());
  std::sort(merged.begin(), merged.end());
  merged.erase(std::unique(merged.begin(), merged.end()), merged.end());
  return merged;
}

inline std::vector<char32_t> merge_topics(const TopicModel& model) {
  std::vector<std::vector<char32_t>> lists;
  for (const auto& topic : model.top) {
    std::vector<char32_t> chars;
    for (const auto& tw : topic) chars.push_back(tw.ch);
    lists.push_back(std::move(chars));
  }
  return merge_topics(lists);
}

// topic, characters, weights; then a final "merged" row.
inline std::string topics_tsv(const TopicModel& model) {
  std::string out = "topic\tcharacters\tweights\n";
  for (std::size_t k = 0; k < model.top.size(); ++k) {
    tsv::append_int(out, k + 1);
    out += '\t';
    for (const auto& tw : model.top[k]) utf8::append(out, tw.ch);
    out += '\t';
    for (std::size_t i = 0; i < model.top[k].size(); ++i) {
      if (i > 0) out += ',';
      out += tsv::fixed(model.top[k][i].weight);
    }
    out += '\n';
  }
  out += "merged\t";
  for (char32_t ch : merge_topics(model)) utf8::append(out, ch);
  out += "\t\n";
  return out;
}

}  // namespace dynhist
