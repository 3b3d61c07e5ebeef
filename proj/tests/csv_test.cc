/*
 * Copyright 2026 The Mignow Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "mignow/csv.h"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "mignow/error.h"
#include "test_support.h"

namespace mignow {
namespace {

TEST(CsvTableTest, ParsesQuotedFields) {
  const CsvTable t = CsvTable::Parse(
      "a,b,c\n1,\"x, y\",\"say \"\"hi\"\"\"\n2,,z\n", "mem");
  ASSERT_EQ(t.records().size(), 2u);
  EXPECT_EQ(t.Field(t.records()[0], "b"), "x, y");
  EXPECT_EQ(t.Field(t.records()[0], "c"), "say \"hi\"");
  EXPECT_EQ(t.Field(t.records()[1], "b"), "");
  EXPECT_EQ(t.Where(t.records()[1]), "mem:3");
}

TEST(CsvTableTest, HandlesCrlfAndMissingTrailingNewline) {
  const CsvTable t = CsvTable::Parse("a,b\r\n1,2\r\n3,4", "mem");
  ASSERT_EQ(t.records().size(), 2u);
  EXPECT_EQ(t.Field(t.records()[1], "b"), "4");
}

TEST(CsvTableTest, RaggedRowNamesLine) {
  try {
    CsvTable::Parse("a,b\n1,2\n3\n", "f.csv");
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("f.csv:3"), std::string::npos);
  }
}

TEST(CsvTableTest, MissingColumn) {
  const CsvTable t = CsvTable::Parse("a,b\n1,2\n", "mem");
  EXPECT_THROW(t.RequireColumns({"a", "c"}), Error);
  EXPECT_NO_THROW(t.RequireColumns({"b", "a"}));
}

TEST(FormatDoubleTest, ShortestRoundTrip) {
  EXPECT_EQ(FormatDouble(0.1), "0.1");
  EXPECT_EQ(FormatDouble(60000), "60000");
  EXPECT_EQ(FormatDouble(-0.0), "0");
  EXPECT_EQ(FormatDouble(std::numeric_limits<double>::infinity()), "inf");
  EXPECT_EQ(FormatDouble(std::nan("")), "nan");
  for (double v : {1.0 / 3, 2.5e-17, 123456.789, -7.25e300}) {
    EXPECT_EQ(ParseReal(FormatDouble(v)), v);
  }
}

TEST(ParseNumberTest, RejectsJunk) {
  EXPECT_EQ(ParseInt("412"), 412);
  EXPECT_EQ(ParseInt("-5"), -5);
  EXPECT_FALSE(ParseInt("4.5"));
  EXPECT_FALSE(ParseInt("12abc"));
  EXPECT_FALSE(ParseInt(""));
  EXPECT_EQ(ParseReal("1e3"), 1000.0);
  EXPECT_FALSE(ParseReal("one"));
}

TEST(CsvWriterTest, QuotesWhenNeeded) {
  CsvWriter w({"k", "v"});
  w.Row({"a,b", "plain"}).Row({"say \"x\"", ""});
  EXPECT_EQ(w.text(), "k,v\n\"a,b\",plain\n\"say \"\"x\"\"\",\n");
  const CsvTable t = CsvTable::Parse(w.text(), "mem");
  EXPECT_EQ(t.Field(t.records()[1], "k"), "say \"x\"");
}

TEST(FileTest, WriteCreatesParents) {
  const auto dir = testing::TempDir("csv_file");
  WriteFile(dir / "a" / "b.txt", "hello");
  EXPECT_EQ(ReadFile(dir / "a" / "b.txt"), "hello");
  EXPECT_THROW(ReadFile(dir / "missing.txt"), Error);
}

}  // namespace
}  // namespace mignow
