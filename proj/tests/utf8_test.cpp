#include <gtest/gtest.h>

#include "dynhist/charclass.hpp"
#include "dynhist/utf8.hpp"

using namespace dynhist;

TEST(Utf8, RoundTripsMixedText) {
  const std::u32string text = U"史記A卷𠀀。";
  EXPECT_EQ(utf8::decode(utf8::encode(text)), text);
}

TEST(Utf8, ReportsByteOffsetOfInvalidSequence) {
  const std::string bad = std::string("王王") + "\xC3\x28";
  try {
    utf8::decode(bad);
    FAIL() << "expected IngestError";
  } catch (const IngestError& e) {
    EXPECT_EQ(e.byte_offset(), 6u);
  }
}

TEST(Utf8, RejectsOverlongSurrogateAndTruncated) {
  EXPECT_THROW(utf8::decode("\xC0\xAF"), IngestError);
  EXPECT_THROW(utf8::decode("\xED\xA0\x80"), IngestError);
  EXPECT_THROW(utf8::decode("\xE7\x8E"), IngestError);
  EXPECT_THROW(utf8::decode("\xFF"), IngestError);
}

TEST(Utf8, DecodeSingle) {
  char32_t cp = 0;
  EXPECT_TRUE(utf8::decode_single("主", cp));
  EXPECT_EQ(cp, U'主');
  EXPECT_FALSE(utf8::decode_single("主主", cp));
  EXPECT_FALSE(utf8::decode_single("", cp));
}

TEST(CharClass, StripsCjkAndAsciiPunctuation) {
  for (char32_t cp : std::u32string(U"。！？；，、：「」『』《》（）—…·,.;:!?\"'()[]")) {
    EXPECT_TRUE(charclass::is_strippable(cp)) << static_cast<std::uint32_t>(cp);
  }
  for (char32_t cp : std::u32string(U" \t\r\n　 ﻿")) {
    EXPECT_TRUE(charclass::is_space(cp)) << static_cast<std::uint32_t>(cp);
  }
}

TEST(CharClass, KeepsIdeographsAndIterationMarks) {
  for (char32_t cp : std::u32string(U"王主女々〇A1")) {
    EXPECT_FALSE(charclass::is_strippable(cp)) << static_cast<std::uint32_t>(cp);
  }
}
