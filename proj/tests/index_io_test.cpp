#include <gtest/gtest.h>

#include <filesystem>
#include <random>

#include "dynhist/index_io.hpp"
#include "dynhist/stats.hpp"

using namespace dynhist;

TEST(IndexIo, FormatsWorkedRecord) {
  EXPECT_EQ(format_record({1, 113, 10, 1, 22, U'主'}), "1,113,10,1,22,主");
}

TEST(IndexIo, ParsesLineAndCrlf) {
  EXPECT_EQ(parse_record_line("24,3,2,1,7,妻\r", 1), (CharRecord{24, 3, 2, 1, 7, U'妻'}));
}

TEST(IndexIo, RangeViolationIsValidationError) {
  EXPECT_THROW(parse_record_line("1,1,1,1,0,王", 1), ValidationError);
  EXPECT_THROW(parse_record_line("25,1,1,1,1,王", 1), ValidationError);
  EXPECT_THROW(parse_record_line("1,-1,1,1,1,王", 1), ValidationError);
}

TEST(IndexIo, MalformedLineCarriesLineNumber) {
  try {
    read_index("1,1,1,1,1,王\n1,1,1,1,2\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
  EXPECT_THROW(parse_record_line("1,1,x,1,1,王", 1), ParseError);
  EXPECT_THROW(parse_record_line("1,1,1,1,1,王王", 1), ParseError);
  EXPECT_THROW(parse_record_line("1,1,1,1,1,", 1), ParseError);
  EXPECT_THROW(parse_record_line("1,1,1,1,1,王,", 1), ParseError);
}

TEST(IndexIo, RoundTripRandom) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> small(1, 500);
  std::uniform_int_distribution<char32_t> cp(0x4E00, 0x9FFF);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<CharRecord> records(rng() % 40);
    for (auto& r : records) {
      r = {1 + static_cast<int>(rng() % 24), small(rng), small(rng), small(rng), small(rng), cp(rng)};
    }
    ASSERT_EQ(read_index(write_index(records)), records);
  }
}

TEST(IndexIo, FileNames) {
  const auto parsed = parse_history_file_name("01_shiji_full.txt", kRawSuffix);
  ASSERT_TRUE(parsed);
  EXPECT_EQ(parsed->id, 1);
  EXPECT_EQ(parsed->name, "shiji");
  EXPECT_EQ(index_file_name(1, "shiji"), "01_shiji_index.txt");
  EXPECT_EQ(index_file_name(24, "mingshi"), "24_mingshi_index.txt");
  EXPECT_FALSE(parse_history_file_name("shiji_full.txt", kRawSuffix));
  EXPECT_FALSE(parse_history_file_name("01_shiji_index.txt", kRawSuffix));
}

TEST(IndexIo, IngestAndLoadDirectory) {
  const auto out = std::filesystem::temp_directory_path() / "dynhist_index_io_test";
  std::filesystem::remove_all(out);
  const auto summaries =
      ingest_directory(std::string(DYNHIST_TEST_DATA) + "/raw", out, IngestConfig{}, {2});
  ASSERT_EQ(summaries.size(), 2u);
  EXPECT_EQ(summaries[0].history.name, "shiji");

  const IndexedCorpus corpus = load_index_directory(out, {2});
  ASSERT_EQ(corpus.histories().size(), 2u);
  EXPECT_EQ(corpus.histories()[0].char_count, summaries[0].records);
  EXPECT_EQ(corpus.histories()[1].char_count, summaries[1].records);
  const auto again = read_file(out / "01_shiji_index.txt");
  EXPECT_EQ(write_index(corpus.records(0)), again);
  std::filesystem::remove_all(out);
}

TEST(IndexIo, MissingDirectoryFails) {
  EXPECT_THROW(load_index_directory("/nonexistent/dynhist"), Error);
}
