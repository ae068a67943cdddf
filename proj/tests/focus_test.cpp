#include <gtest/gtest.h>

#include <random>

#include "dynhist/focus.hpp"
#include "oracles.hpp"
#include "test_support.hpp"

using namespace dynhist;

TEST(Focus, AbsentTarget) {
  const auto corpus = fixture::corpus_from_texts({"王曰。臣對"});
  const auto split = extract_focus(corpus, U"女");
  EXPECT_TRUE(split.focus_units.empty());
  EXPECT_EQ(split.focus_size, 0u);
  EXPECT_EQ(split.reference_size, corpus.size());
}

TEST(Focus, EverySentenceHasTarget) {
  const auto corpus = fixture::corpus_from_texts({"女曰。女對"});
  const auto split = extract_focus(corpus, U"女");
  EXPECT_EQ(split.reference_size, 0u);
  for (auto c : split.reference_counts) EXPECT_EQ(c, 0u);
  EXPECT_EQ(focus_dump(split), "女曰\n女對\n");
}

TEST(Focus, FiveSentences) {
  const auto corpus = fixture::corpus_from_texts({"王曰。女至。見之。妻女。臣"});
  const auto split = extract_focus(corpus, U"女");
  EXPECT_EQ(split.focus_units.size(), 2u);
  EXPECT_EQ(split.focus_count(U'女'), 2u);
  EXPECT_EQ(split.focus_count(U'妻'), 1u);
  EXPECT_EQ(split.reference_count(U'王'), 1u);
  EXPECT_EQ(split.focus_size, 4u);
  EXPECT_EQ(split.reference_size, 5u);
}

TEST(Focus, PartitionMatchesOracle) {
  std::mt19937_64 rng(8);
  const std::vector<std::u32string> targets{U"王", U"女", U"太后", U"王子"};
  for (int trial = 0; trial < 20; ++trial) {
    const auto corpus = fixture::corpus_from_texts(
        {fixture::random_text(rng, U"王子女太后曰", 15), fixture::random_text(rng, U"王子女太后曰", 15)});
    const auto& target = targets[trial % targets.size()];
    for (WindowUnit unit : {WindowUnit::sentence, WindowUnit::paragraph}) {
      const auto split = extract_focus(corpus, target, unit);
      const auto expect = oracle::partition(corpus.records(), target, unit);
      EXPECT_EQ(split.focus_units.size(), expect.focus_units);
      EXPECT_EQ(split.focus_size, expect.focus_size);
      EXPECT_EQ(split.reference_size, expect.reference_size);
      const auto freq = corpus.char_frequencies();
      for (std::size_t i = 0; i < split.vocabulary.size(); ++i) {
        const char32_t c = split.vocabulary[i];
        EXPECT_EQ(split.focus_counts[i] + split.reference_counts[i], freq[i]);
        EXPECT_EQ(split.focus_counts[i], expect.focus.count(c) ? expect.focus.at(c) : 0u);
      }
    }
    EXPECT_LE(extract_focus(corpus, target).focus_size,
              extract_focus(corpus, target, WindowUnit::paragraph).focus_size);
  }
}
