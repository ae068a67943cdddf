#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

#include "dynhist/diachronic.hpp"
#include "oracles.hpp"
#include "test_support.hpp"

using namespace dynhist;

TEST(Slope, ConstantAndLinear) {
  const std::vector<double> flat(24, 7.0);
  EXPECT_EQ(slope(flat), 0.0);
  EXPECT_EQ(classify_trend(slope(flat)), TrendClass::neutral);
  std::vector<double> line(24);
  for (int i = 0; i < 24; ++i) line[i] = 2.0 * i;
  EXPECT_DOUBLE_EQ(slope(line), 2.0);
  EXPECT_EQ(classify_trend(slope(line)), TrendClass::up);
}

TEST(Slope, MatchesClosedForm) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> value(0.0, 500.0);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> y(24);
    for (auto& v : y) v = value(rng);
    const double expect = static_cast<double>(oracle::slope(y));
    EXPECT_NEAR(slope(y), expect, 1e-9 * std::max(1.0, std::fabs(expect)));
  }
}

TEST(Slope, ShiftAndScale) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> value(-50.0, 50.0);
  std::vector<double> y(24);
  for (auto& v : y) v = value(rng);
  const double base = slope(y);
  auto shifted = y, scaled = y;
  for (auto& v : shifted) v += 123.0;
  for (auto& v : scaled) v *= 3.0;
  EXPECT_NEAR(slope(shifted), base, 1e-9 * std::fabs(base));
  EXPECT_NEAR(slope(scaled), 3.0 * base, 1e-9 * std::fabs(base));
}

TEST(Classify, BandEdges) {
  EXPECT_EQ(classify_trend(2.0), TrendClass::up);
  EXPECT_EQ(classify_trend(0.0), TrendClass::neutral);
  EXPECT_EQ(classify_trend(1.25), TrendClass::undefined);
  EXPECT_EQ(classify_trend(0.75), TrendClass::weak);
  EXPECT_EQ(classify_trend(0.5), TrendClass::neutral);
  EXPECT_EQ(classify_trend(-0.5), TrendClass::neutral);
  EXPECT_EQ(classify_trend(1.0), TrendClass::weak);
  EXPECT_EQ(classify_trend(-1.0), TrendClass::weak);
  EXPECT_EQ(classify_trend(1.5), TrendClass::undefined);
  EXPECT_EQ(classify_trend(-1.5), TrendClass::undefined);
  EXPECT_EQ(classify_trend(std::nextafter(1.5, 2.0)), TrendClass::up);
  EXPECT_EQ(classify_trend(std::nextafter(-1.5, -2.0)), TrendClass::down);
  EXPECT_EQ(classify_trend(std::nextafter(0.5, 1.0)), TrendClass::weak);
  EXPECT_EQ(classify_trend(std::nextafter(1.0, 2.0)), TrendClass::undefined);
  EXPECT_THROW(classify_trend(std::numeric_limits<double>::quiet_NaN()), ValidationError);
  EXPECT_THROW(classify_trend(std::numeric_limits<double>::infinity()), ValidationError);
}

TEST(Normalize, RoundsHalfUp) {
  EXPECT_EQ(normalize_count(58, 577256, 100000), 10u);
  EXPECT_EQ(normalize_count(0, 577256, 100000), 0u);
  EXPECT_EQ(normalize_count(1, 200000, 100000), 1u);  // exactly 0.5
  EXPECT_EQ(normalize_count(1, 200001, 100000), 0u);
  EXPECT_EQ(normalize_count(3, 2, 1), 2u);  // 1.5
}

namespace {

// Four histories; 王/臣 co-occurrence rises from 0 to many sentences.
IndexedCorpus rising_corpus() {
  std::vector<std::string> texts;
  for (int h = 0; h < 4; ++h) {
    std::string t;
    for (int i = 0; i < 20; ++i) t += i < h * 6 ? "王臣。" : "見之。";
    t += "女曰。\n";
    texts.push_back(t);
  }
  return fixture::corpus_from_texts(texts);
}

}  // namespace

TEST(TrendReport, CutoffAndDirectional) {
  const auto corpus = rising_corpus();
  const auto lex = fixture::make_lexicon({U"王"}, {U"女"});
  const auto report = trend_report(corpus, lex, WindowUnit::sentence);
  // 王-臣 only: 女-曰 raw is 1 everywhere
  ASSERT_EQ(report.rows.size(), 1u);
  const auto& r = report.rows[0];
  EXPECT_EQ(r.target, U"王");
  EXPECT_EQ(r.context, U'臣');
  EXPECT_EQ(r.raw, (std::vector<std::uint64_t>{0, 6, 12, 18}));
  EXPECT_EQ(r.normalized[1], normalize_count(6, corpus.histories()[1].char_count, 100000));
  EXPECT_EQ(r.trend, TrendClass::up);
  EXPECT_EQ(report.nonzero_pairs, 2u);
  EXPECT_EQ(report.directional().size(), 1u);

  const auto tsv = trend_tsv(report, true);
  EXPECT_EQ(tsv.substr(0, tsv.find('\n')),
            "target\tcontext\tunit\traw_1\traw_2\traw_3\traw_4\tnorm_1\tnorm_2\tnorm_3\tnorm_4\tslope\tclass");
}

TEST(TrendReport, EmptyLexiconEmptyReport) {
  const auto report = trend_report(rising_corpus(), Lexicon{}, WindowUnit::sentence);
  EXPECT_TRUE(report.rows.empty());
}

TEST(TrendReport, DirectionalSubsetOfFull) {
  std::mt19937_64 rng(4);
  std::vector<std::string> texts;
  for (int h = 0; h < 6; ++h) texts.push_back(fixture::random_text(rng, U"王子女妻曰見之", 60));
  const auto corpus = fixture::corpus_from_texts(texts);
  const auto lex = fixture::make_lexicon({U"王", U"王子"}, {U"女", U"妻"});
  const auto report = trend_report(corpus, lex, WindowUnit::paragraph, {2, 1000}, {3});
  EXPECT_LE(report.directional().size(), report.rows.size());
  EXPECT_LE(report.rows.size(), report.nonzero_pairs);
  for (const auto& r : report.rows) {
    EXPECT_TRUE(std::any_of(r.raw.begin(), r.raw.end(), [](auto v) { return v > 2; }));
    const auto single = pair_series(corpus, lex, r.target, r.context, WindowUnit::paragraph, {2, 1000});
    ASSERT_TRUE(single);
    EXPECT_EQ(single->raw, r.raw);
  }
}

TEST(PairSeries, UnknownTargetAndFilteredPair) {
  const auto corpus = rising_corpus();
  const auto lex = fixture::make_lexicon({U"王"}, {U"女"});
  EXPECT_THROW(pair_series(corpus, lex, U"妻", U'曰', WindowUnit::sentence), ValidationError);
  EXPECT_FALSE(pair_series(corpus, lex, U"女", U'曰', WindowUnit::sentence));
  EXPECT_FALSE(pair_series(corpus, lex, U"女", U'龍', WindowUnit::sentence));
}
