#include <gtest/gtest.h>

#include "grpdb/error.hpp"
#include "grpdb/generator_file.hpp"

using namespace grpdb;

TEST(GeneratorFile, ParsesBlocks) {
  const auto blocks = parse_generator_file(
      "# two groups\n"
      "group 6.1 degree 3 name S3\n"
      "(1,2)\n"
      "(1,2,3)\n"
      "\n"
      "group degree 4\n"
      "  (1,2,3,4)  \n");
  ASSERT_EQ(blocks.size(), 2u);
  EXPECT_EQ(blocks[0].label, "6.1");
  EXPECT_EQ(blocks[0].name, "S3");
  EXPECT_EQ(blocks[0].degree, 3u);
  EXPECT_EQ(blocks[0].generators.size(), 2u);
  EXPECT_EQ(blocks[0].line, 2);
  EXPECT_FALSE(blocks[1].label.has_value());
  EXPECT_EQ(blocks[1].generators.front().cycles(), "(1,2,3,4)");
}

TEST(GeneratorFile, FormatRoundTrips) {
  const std::string text = "group 6.1 degree 3 name S3\n(1,2)\n(1,2,3)\n";
  const auto blocks = parse_generator_file(text);
  ASSERT_EQ(blocks.size(), 1u);
  EXPECT_EQ(format_generator_block(blocks[0]), text);
}

TEST(GeneratorFile, MalformedCycleReportsLineAndColumn) {
  try {
    parse_generator_file("group 6.1 degree 3\n(1,2)\n  (1,2\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3);
    EXPECT_GE(e.column(), 3);
  }
}

TEST(GeneratorFile, HeaderErrors) {
  auto line_col = [](const std::string& text) {
    try {
      parse_generator_file(text);
    } catch (const ParseError& e) {
      return std::make_pair(e.line(), e.column());
    }
    return std::make_pair(0, 0);
  };
  EXPECT_EQ(line_col("grp 6.1 degree 3\n(1,2)\n"), std::make_pair(1, 1));
  EXPECT_EQ(line_col("group 6.x1 degree 3\n(1,2)\n"), std::make_pair(1, 7));
  EXPECT_EQ(line_col("group 6.1 deg 3\n(1,2)\n"), std::make_pair(1, 11));
  EXPECT_EQ(line_col("group 6.1 degree 0\n(1,2)\n"), std::make_pair(1, 18));
  EXPECT_EQ(line_col("group 6.1 degree 3\n\n"), std::make_pair(1, 1));
  EXPECT_EQ(line_col("group 6.1 degree 3 extra\n(1,2)\n"), std::make_pair(1, 20));
}

TEST(GeneratorFile, GroupLabels) {
  EXPECT_TRUE(is_group_label("6.1"));
  EXPECT_TRUE(is_group_label("128.a"));
  EXPECT_TRUE(is_group_label("60480.aa"));
  EXPECT_FALSE(is_group_label("6"));
  EXPECT_FALSE(is_group_label("06.1"));
  EXPECT_FALSE(is_group_label("6.01"));
  EXPECT_FALSE(is_group_label("6.A"));
  EXPECT_FALSE(is_group_label("6.1a"));
}
