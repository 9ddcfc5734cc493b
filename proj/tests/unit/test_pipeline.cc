#include <gtest/gtest.h>

#include "corpus.hpp"
#include "grpdb/error.hpp"
#include "grpdb/families.hpp"
#include "grpdb/iso_hash.hpp"
#include "grpdb/pipeline.hpp"
#include "grpdb/record_json.hpp"
#include "oracle.hpp"

using namespace grpdb;

namespace {

GroupRecord computed(const std::string& label, const std::string& name, const Budgets& budgets = {}) {
  return compute_all(make_stub(label, name, testing_corpus::group(name)), budgets);
}

}  // namespace

TEST(Pipeline, StubCarriesInvariants) {
  const PermGroup g = testing_corpus::group("A4");
  const GroupRecord stub = make_stub("12.3", "A4", g);
  EXPECT_EQ(stub.order, 12u);
  EXPECT_EQ(stub.exponent, 6u);
  EXPECT_EQ(stub.hash, group_hash(g).hex());
  EXPECT_FALSE(stub.computed);
  EXPECT_TRUE(stub.stages.empty());
  EXPECT_EQ(group_of(stub).order(), 12u);
}

TEST(Pipeline, S3IsComplete) {
  const GroupRecord r = computed("6.1", "S3");
  EXPECT_TRUE(r.computed);
  for (const char* stage : {"core", "lattice", "automorphisms", "labels", "characters", "presentation"})
    EXPECT_TRUE(r.stage_complete(stage)) << stage;
  EXPECT_EQ(r.class_count, 3u);
  EXPECT_EQ(r.abelianization, (std::vector<std::uint64_t>{2}));
  EXPECT_FALSE(r.nilpotency_class.has_value());
  EXPECT_EQ(r.derived_length, 2u);
  EXPECT_EQ(r.aut_order, "6");
  EXPECT_EQ(r.outer_order, "1");
  ASSERT_TRUE(r.lattice);
  EXPECT_EQ(r.lattice->classes.size(), 4u);
  EXPECT_EQ(r.lattice->subgroup_count, 6u);
  ASSERT_TRUE(r.presentation);
  EXPECT_EQ(r.presentation->display, "⟨a, b | a^2, b^3, b^a = b^2⟩");
  ASSERT_TRUE(r.characters);
  EXPECT_EQ(r.characters->characters.size(), 3u);
}

TEST(Pipeline, SubgroupFlagsAgreeWithOracle) {
  const GroupRecord r = computed("24.12", "S4");
  ASSERT_TRUE(r.lattice);
  for (const auto& s : r.lattice->classes) {
    std::vector<oracle::Perm> gens;
    for (const auto& c : s.generators) gens.push_back(oracle::from(Permutation::parse_cycles(c, r.degree)));
    const std::size_t n = gens.empty() ? 1 : oracle::closure(gens).order();
    EXPECT_EQ(n, s.order) << s.label;
    EXPECT_EQ(s.order * s.index, 24u);
    if (gens.empty()) continue;
    const oracle::Group h = oracle::closure(gens);
    const auto attrs = oracle::attributes(h);
    EXPECT_EQ(attrs.abelian, s.abelian) << s.label;
    EXPECT_EQ(attrs.cyclic, s.cyclic) << s.label;
  }
}

TEST(Pipeline, NonSolvablePresentationUnsupported) {
  const GroupRecord r = computed("60.5", "A5");
  const StageStatus* p = r.stage("presentation");
  ASSERT_NE(p, nullptr);
  EXPECT_EQ(p->state, StageState::unsupported);
  EXPECT_FALSE(r.presentation);
  EXPECT_TRUE(r.attributes.simple);
  EXPECT_TRUE(r.attributes.perfect);
}

TEST(Pipeline, BudgetsOmitStages) {
  Budgets small;
  small.subgroup_budget = 50;
  small.automorphism_budget = 16;
  small.character_budget = 16;
  const GroupRecord r = compute_all(make_stub("64.267", "C2^6", testing_corpus::group("C2^6")), small);
  EXPECT_EQ(r.stage("lattice")->state, StageState::omitted);
  EXPECT_EQ(r.stage("automorphisms")->state, StageState::omitted);
  EXPECT_EQ(r.stage("characters")->state, StageState::omitted);
  EXPECT_FALSE(r.stage("lattice")->reason.empty());
  EXPECT_TRUE(r.stage_complete("core"));
  EXPECT_TRUE(r.stage_complete("presentation"));
  ASSERT_TRUE(r.lattice);
  EXPECT_FALSE(r.lattice->complete);
  EXPECT_FALSE(r.characters);
}

TEST(Pipeline, RecordJsonRoundTrip) {
  for (const char* name : {"S3", "Q8", "A5", "C2^6"}) {
    const GroupRecord r = compute_all(make_stub("1.1", name, testing_corpus::group(name)));
    const std::string text = dump_record(r);
    const GroupRecord back = record_from_json(nlohmann::json::parse(text));
    EXPECT_EQ(dump_record(back), text) << name;
  }
  const GroupRecord stub = make_stub("6.1", "S3", testing_corpus::group("S3"));
  EXPECT_EQ(dump_record(record_from_json(to_json(stub))), dump_record(stub));
}

TEST(Pipeline, RecordJsonRejectsMissingFields) {
  nlohmann::json j = to_json(make_stub("6.1", "S3", testing_corpus::group("S3")));
  j.erase("order");
  EXPECT_THROW(record_from_json(j), ParseError);
}

TEST(Pipeline, DeterministicOutput) {
  EXPECT_EQ(dump_record(computed("24.3", "SL(2,3)")), dump_record(computed("24.3", "SL(2,3)")));
}

TEST(Pipeline, IdentifiesSmallGroups) {
  EXPECT_EQ(identify_group(PermGroup::generate(families::abelian({2, 4}))), "C2xC4");
  EXPECT_EQ(identify_group(PermGroup::generate(families::abelian({3, 4}))), "C12");
  EXPECT_EQ(identify_group(PermGroup::generate(families::alternating(4))), "A4");
  EXPECT_EQ(identify_group(PermGroup::generate(families::regular(testing_corpus::group("Q8")))), "Q8");
}

TEST(Pipeline, StageStateStrings) {
  for (auto s : {StageState::complete, StageState::omitted, StageState::unsupported, StageState::failed})
    EXPECT_EQ(stage_state_from_string(to_string(s)), s);
  EXPECT_THROW(stage_state_from_string("done"), ParseError);
}
