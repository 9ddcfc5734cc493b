#include <gtest/gtest.h>

#include "corpus.hpp"
#include "grpdb/error.hpp"
#include "grpdb/families.hpp"
#include "grpdb/query.hpp"
#include "grpdb/store.hpp"
#include "naive_query.hpp"

using namespace grpdb;

namespace {

int error_column(const std::string& text) {
  try {
    parse_query(text);
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 1);
    return e.column();
  }
  return 0;
}

const std::vector<std::string> kIsoNames{"C1", "C2", "C3", "C4", "C2^2", "C6", "S3", "Q8", "D4", "C2^3", "A4", "D5"};

// Computed corpus groups up to order 64, with small subgroup budgets on a few so that some
// lattices are partial, plus two uncomputed stubs.
Store& shared_store() {
  static Store* store = [] {
    auto* s = new Store;
    for (const auto& e : testing_corpus::up_to(64)) s->ingest(e.id, e.name, PermGroup::generate(e.generators));
    Budgets small;
    small.subgroup_budget = 12;
    std::vector<std::string> big, rest;
    for (const auto& label : s->labels()) (s->get(label)->order >= 48 ? big : rest).push_back(label);
    s->compute(rest);
    s->compute(big, small);
    s->ingest(std::nullopt, "stub C3^4", PermGroup::generate(families::abelian({3, 3, 3, 3})));
    s->ingest(std::nullopt, "stub D29", PermGroup::generate(families::dihedral(29)));
    return s;
  }();
  return *store;
}

naive::Evaluator& shared_naive() {
  static naive::Evaluator* e = [] {
    auto* n = new naive::Evaluator(shared_store());
    for (const auto& name : kIsoNames) {
      const PermGroup g = resolve_iso(shared_store(), name);
      std::vector<oracle::Perm> gens;
      for (const auto& p : g.generators()) gens.push_back(oracle::from(p));
      n->targets.emplace(name, oracle::closure(gens));
    }
    return n;
  }();
  return *e;
}

}  // namespace

TEST(QueryParse, Terms) {
  const QueryAST q = parse_query(
      "order:>=12 exponent:1..6 factors:[1,2] abelian:false abelianization:[6,2] nilpotency_class:<3 "
      "derived_length:2 classes:<=10 has_subgroup(iso=A4, normal=true) has_subgroup(index=2)");
  ASSERT_TRUE(q.order);
  EXPECT_EQ(q.order->op, IntPredicate::Op::ge);
  EXPECT_EQ(q.order->lo, 12);
  EXPECT_EQ(q.exponent->op, IntPredicate::Op::range);
  EXPECT_EQ(q.exponent->hi, 6);
  EXPECT_EQ(*q.factors, (std::vector<int>{2, 1}));
  EXPECT_EQ(q.flags.at("abelian"), false);
  EXPECT_EQ(*q.abelianization, (std::vector<std::uint64_t>{2, 6}));
  EXPECT_EQ(q.nilpotency_class->op, IntPredicate::Op::lt);
  EXPECT_EQ(q.class_count->op, IntPredicate::Op::le);
  ASSERT_EQ(q.subgroups.size(), 2u);
  EXPECT_EQ(q.subgroups[0].iso, "A4");
  EXPECT_EQ(q.subgroups[0].normal, true);
  EXPECT_EQ(q.subgroups[1].index->lo, 2);
  EXPECT_TRUE(parse_query("").str().empty());
  EXPECT_TRUE(parse_query("   ").str().empty());
}

TEST(QueryParse, CanonicalTextRoundTrips) {
  for (const char* text : {"order:6", "has_subgroup(iso=\"C2 x C2\")", "exponent:2..2 solvable:true",
                           "has_subgroup(iso=\"SL(2,3)\")", "abelianization:[]"}) {
    const std::string canon = parse_query(text).str();
    EXPECT_EQ(parse_query(canon).str(), canon) << text;
  }
  EXPECT_EQ(parse_query("  solvable:true order:6 ").str(), "order:6 solvable:true");
  EXPECT_EQ(parse_query("abelianization:[4,2,3]").str(), "abelianization:[2,12]");
  EXPECT_EQ(parse_query("has_subgroup( order = 2 , iso=C2 )").str(), "has_subgroup(iso=C2,order=2)");

  std::mt19937 rng(7);
  for (int i = 0; i < 200; ++i) {
    const QueryAST q = naive::random_query(rng, kIsoNames);
    EXPECT_EQ(parse_query(q.str()).str(), q.str());
  }
}

TEST(QueryParse, ErrorsPointAtTheOffendingColumn) {
  EXPECT_EQ(error_column("order:6 bogus:1"), 9);
  EXPECT_EQ(error_column("order:6 order:7"), 9);
  EXPECT_EQ(error_column("order:x"), 7);
  EXPECT_EQ(error_column("order:5..3"), 10);
  EXPECT_EQ(error_column("order:1234567890123456"), 7);
  EXPECT_EQ(error_column("abelian:yes"), 9);
  EXPECT_EQ(error_column("factors:[1,0]"), 9);
  EXPECT_EQ(error_column("has_subgroup(iso=A4"), 20);
  EXPECT_EQ(error_column("has_subgroup(colour=red)"), 14);
  EXPECT_EQ(error_column("has_subgroup(iso=\"A4)"), 18);
  EXPECT_EQ(error_column("order:6,abelian:true"), 8);
  EXPECT_EQ(error_column(":6"), 1);
}

TEST(Query, InvariantFactors) {
  EXPECT_EQ(invariant_factors({}), std::vector<std::uint64_t>{});
  EXPECT_EQ(invariant_factors({6}), std::vector<std::uint64_t>{6});
  EXPECT_EQ(invariant_factors({2, 3}), std::vector<std::uint64_t>{6});
  EXPECT_EQ(invariant_factors({4, 2, 3}), (std::vector<std::uint64_t>{2, 12}));
  EXPECT_EQ(invariant_factors({2, 2, 2}), (std::vector<std::uint64_t>{2, 2, 2}));
  EXPECT_EQ(invariant_factors({12, 18}), (std::vector<std::uint64_t>{6, 36}));
}

TEST(Query, ResolveIso) {
  const Store& store = shared_store();
  EXPECT_EQ(resolve_iso(store, "C2^2xC4").order(), 16u);
  EXPECT_EQ(resolve_iso(store, "C1").order(), 1u);
  EXPECT_EQ(resolve_iso(store, "A4").order(), 12u);
  EXPECT_EQ(resolve_iso(store, "12.3").order(), 12u);
  EXPECT_THROW(resolve_iso(store, "Foo"), UnsupportedQuery);
  EXPECT_THROW(resolve_iso(store, "999.1"), UnsupportedQuery);
  EXPECT_THROW(resolve_iso(store, "C1000^3"), UnsupportedQuery);
  EXPECT_THROW(run_query(store, parse_query("has_subgroup(iso=Foo)")), UnsupportedQuery);
}

TEST(Query, KnownAnswers) {
  const Store& store = shared_store();
  EXPECT_EQ(run_query(store, parse_query("order:6")).labels, (std::vector<std::string>{"6.1", "6.2"}));
  EXPECT_EQ(run_query(store, parse_query("order:8 factors:[3]")).labels.size(), 5u);
  EXPECT_EQ(run_query(store, parse_query("order:12 abelian:false")).labels,
            (std::vector<std::string>{"12.1", "12.3", "12.4"}));
  EXPECT_EQ(run_query(store, parse_query("order:<=12 has_subgroup(iso=C2^2,normal=true)")).labels,
            (std::vector<std::string>{"4.2", "8.2", "8.3", "8.5", "12.3", "12.5"}));
  EXPECT_EQ(run_query(store, parse_query("simple:true abelian:false")).labels, (std::vector<std::string>{"60.5"}));
  const QueryResult all = run_query(store, parse_query(""));
  EXPECT_EQ(all.labels.size(), store.size());
  EXPECT_TRUE(all.unknown.empty());
}

TEST(Query, StubsAreUnknownUnlessDecidedByStubFields) {
  const Store& store = shared_store();
  EXPECT_EQ(run_query(store, parse_query("abelian:true order:81")).unknown, (std::vector<std::string>{"81.a"}));
  const QueryResult wrong_exponent = run_query(store, parse_query("order:58 exponent:29 nilpotent:true"));
  EXPECT_TRUE(wrong_exponent.labels.empty());
  EXPECT_TRUE(wrong_exponent.unknown.empty());
  EXPECT_EQ(run_query(store, parse_query("order:58 exponent:58 has_subgroup(index=2)")).unknown,
            (std::vector<std::string>{"58.a"}));
  EXPECT_TRUE(run_query(store, parse_query("order:58")).unknown.empty());
}

TEST(Query, AgreesWithNaiveScan) {
  const Store& store = shared_store();
  const naive::Evaluator& scan = shared_naive();
  ASSERT_GE(scan.records.size(), 100u);
  std::mt19937 rng(20240611);
  std::size_t nonempty = 0, with_unknown = 0;
  for (int i = 0; i < 60; ++i) {
    const QueryAST q = naive::random_query(rng, kIsoNames);
    const QueryResult got = run_query(store, parse_query(q.str()));
    const QueryResult want = scan.run(q);
    EXPECT_EQ(got.labels, want.labels) << q.str();
    EXPECT_EQ(got.unknown, want.unknown) << q.str();
    nonempty += !want.labels.empty();
    with_unknown += !want.unknown.empty();
  }
  EXPECT_GE(nonempty, 20u);
  EXPECT_GE(with_unknown, 5u);
}
