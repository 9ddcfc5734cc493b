#include <gtest/gtest.h>

#include <sstream>

#include "corpus.hpp"
#include "grpdb/error.hpp"
#include "grpdb/families.hpp"
#include "grpdb/store.hpp"

using namespace grpdb;

namespace {

std::size_t line_count(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

}  // namespace

TEST(Store, FactorPatternAndRank) {
  EXPECT_EQ(factor_pattern(1), std::vector<int>{});
  EXPECT_EQ(factor_pattern(96), (std::vector<int>{5, 1}));
  EXPECT_EQ(factor_pattern(360), (std::vector<int>{3, 2, 1}));
  EXPECT_EQ(pattern_string({3, 2, 1}), "[3,2,1]");
  EXPECT_LT(label_rank("12.4"), label_rank("12.10"));
  EXPECT_LT(label_rank("12.99"), label_rank("12.a"));
  EXPECT_LT(label_rank("12.z"), label_rank("12.aa"));
}

TEST(Store, IngestAssignsLabelsAndAliases) {
  Store store;
  const auto s3 = store.ingest_text("group 6.1 degree 3 name S3\n(1,2)\n(1,2,3)\n");
  ASSERT_EQ(s3.size(), 1u);
  EXPECT_EQ(s3[0].label, "6.1");
  EXPECT_FALSE(s3[0].alias);

  // The regular representation of S3 is an alias; C6 gets the next free letter label.
  const PermGroup regular = PermGroup::generate(families::regular(testing_corpus::group("S3")));
  const IngestResult alias = store.ingest(std::nullopt, "S3 regular", regular);
  EXPECT_TRUE(alias.alias);
  EXPECT_EQ(alias.label, "6.1");
  EXPECT_TRUE(store.ingest(std::nullopt, "again", regular).alias);

  const IngestResult c6 = store.ingest(std::nullopt, "C6", testing_corpus::group("C6"));
  EXPECT_FALSE(c6.alias);
  EXPECT_EQ(c6.label, "6.a");
  const IngestResult other = store.ingest(std::nullopt, "", PermGroup::generate(families::abelian({7})));
  EXPECT_EQ(other.label, "7.a");

  const auto rec = store.get("6.1");
  ASSERT_TRUE(rec);
  EXPECT_EQ(rec->name, "S3");
  ASSERT_EQ(rec->aliases.size(), 1u);
  EXPECT_EQ(rec->aliases[0].source, "S3 regular");
  EXPECT_EQ(rec->aliases[0].degree, 6u);
  EXPECT_EQ(store.size(), 3u);
  EXPECT_EQ(store.labels(), (std::vector<std::string>{"6.1", "6.a", "7.a"}));
  EXPECT_EQ(store.labels_of_order(6), (std::vector<std::string>{"6.1", "6.a"}));
}

TEST(Store, LabelConflicts) {
  Store store;
  store.ingest(std::string("6.1"), "S3", testing_corpus::group("S3"));
  EXPECT_THROW(store.ingest(std::string("6.1"), "C6", testing_corpus::group("C6")), DomainError);
  EXPECT_THROW(store.ingest(std::string("8.1"), "C6", testing_corpus::group("C6")), DomainError);
  EXPECT_THROW(store.ingest(std::string("6.x1"), "C6", testing_corpus::group("C6")), DomainError);
  EXPECT_EQ(store.size(), 1u);
}

TEST(Store, ComputeAndExportRoundTrip) {
  Store store;
  for (const char* name : {"S3", "C6", "Q8", "A4"}) store.ingest(testing_corpus::entry(name).id, name, testing_corpus::group(name));
  store.compute(store.labels(), {}, 2);
  for (const auto& label : store.labels()) EXPECT_TRUE(store.get(label)->computed) << label;

  std::ostringstream out;
  store.export_jsonl(out, store.labels());
  EXPECT_EQ(line_count(out.str()), 5u);

  Store copy;
  std::istringstream in(out.str());
  EXPECT_EQ(copy.import_jsonl(in), 4u);
  std::ostringstream again;
  copy.export_jsonl(again, copy.labels());
  EXPECT_EQ(again.str(), out.str());

  std::ostringstream subs;
  store.export_subgroups_jsonl(subs, {"12.3"});
  EXPECT_EQ(line_count(subs.str()), 6u);  // header and five classes
}

TEST(Store, EmptyExportIsHeaderOnly) {
  Store store;
  std::ostringstream out;
  store.export_jsonl(out, store.labels());
  EXPECT_EQ(line_count(out.str()), 1u);
  EXPECT_NE(out.str().find("\"header\""), std::string::npos);
  std::istringstream in(out.str());
  EXPECT_EQ(store.import_jsonl(in), 0u);
}

TEST(Store, ImportErrors) {
  Store store;
  std::istringstream no_header("{\"kind\":\"group\"}\n");
  EXPECT_THROW(store.import_jsonl(no_header), ParseError);
  std::istringstream bad_json("{\"kind\":\"header\",\"schema\":1,\"table\":\"groups\"}\n{oops\n");
  try {
    store.import_jsonl(bad_json);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2);
  }
}

TEST(Store, PersistsOnDisk) {
  const std::string path = ::testing::TempDir() + "grpdb_store_test.sqlite";
  std::remove(path.c_str());
  {
    Store store(path);
    store.ingest(std::string("12.3"), "A4", testing_corpus::group("A4"));
  }
  Store reopened(path);
  EXPECT_TRUE(reopened.contains("12.3"));
  EXPECT_EQ(reopened.get("12.3")->name, "A4");
  std::remove(path.c_str());
}
