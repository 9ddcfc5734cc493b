#include <gtest/gtest.h>

#include "corpus.hpp"
#include "grpdb/error.hpp"
#include "grpdb/families.hpp"
#include "grpdb/perm_group.hpp"
#include "oracle.hpp"

using namespace grpdb;

TEST(PermGroup, OrdersMatchNaiveClosure) {
  for (const auto& ng : testing_corpus::up_to(120)) {
    const PermGroup g = PermGroup::generate(ng.generators);
    const oracle::Group naive = oracle::closure(ng.generators);
    EXPECT_EQ(g.order(), naive.order()) << ng.name;
  }
}

TEST(PermGroup, ElementsAreRankedAndIdentityFirst) {
  const PermGroup g = testing_corpus::group("S4");
  EXPECT_TRUE(g.element(PermGroup::identity()).is_identity());
  for (Elt e = 1; e < g.order(); ++e) EXPECT_LT(lehmer_rank(g.element(e - 1)), lehmer_rank(g.element(e)));
}

TEST(PermGroup, MultiplicationAgreesWithPermutations) {
  for (const char* name : {"S4", "Q8", "SL(2,3)", "A5"}) {
    const PermGroup g = testing_corpus::group(name);
    for (Elt a = 0; a < g.order(); a += 3)
      for (Elt b = 0; b < g.order(); b += 5) {
        EXPECT_EQ(g.element(g.mul(a, b)), g.element(a) * g.element(b));
        EXPECT_EQ(g.mul(a, g.inv(a)), PermGroup::identity());
      }
  }
}

TEST(PermGroup, ElementOrdersAndExponent) {
  const PermGroup g = testing_corpus::group("SL(2,3)");
  const oracle::Group naive = oracle::closure(testing_corpus::entry("SL(2,3)").generators);
  std::uint64_t exponent = 1;
  for (Elt e = 0; e < g.order(); ++e) {
    const int i = naive.index(oracle::from(g.element(e)));
    ASSERT_GE(i, 0);
    EXPECT_EQ(g.element_order(e), naive.order_of_elt(i));
    exponent = std::lcm(exponent, std::uint64_t{g.element_order(e)});
  }
  EXPECT_EQ(g.exponent(), exponent);
  EXPECT_EQ(g.exponent(), 12u);
}

TEST(PermGroup, CapRaisesBudgetExceeded) {
  EXPECT_THROW(PermGroup::generate(families::symmetric(7), 1000), BudgetExceeded);
}

TEST(PermGroup, RejectsEmptyAndMixedDegree) {
  EXPECT_THROW(PermGroup::generate({}), StructuralError);
  EXPECT_THROW(PermGroup::generate({Permutation::identity(2), Permutation::identity(3)}), StructuralError);
}

TEST(PermGroup, MembershipLookup) {
  const PermGroup g = testing_corpus::group("A4");
  EXPECT_TRUE(g.find(Permutation::parse_cycles("(1,2,3)", 4)).has_value());
  EXPECT_FALSE(g.find(Permutation::parse_cycles("(1,2)", 4)).has_value());
  EXPECT_THROW(g.index_of(Permutation::parse_cycles("(1,2)", 4)), MembershipError);
}

TEST(PermGroup, GenerateSubgroupMatchesNaive) {
  const PermGroup g = testing_corpus::group("S4");
  const std::vector<Elt> gens{g.index_of(Permutation::parse_cycles("(1,2,3,4)", 4))};
  EXPECT_EQ(generate_subgroup(g, gens).size(), 4u);
  const std::vector<Elt> two{g.index_of(Permutation::parse_cycles("(1,2)", 4)),
                             g.index_of(Permutation::parse_cycles("(3,4)", 4))};
  EXPECT_EQ(generate_subgroup(g, two).size(), 4u);
}

TEST(PseudoRandom, StreamIsDeterministic) {
  const PermGroup a = testing_corpus::group("S5");
  const PermGroup b = testing_corpus::group("S5");
  EXPECT_EQ(pseudo_random_elements(a, 40), pseudo_random_elements(b, 40));
  const auto order = pseudo_random_order(a, a.full_set());
  EXPECT_EQ(order.size(), a.order());
  EXPECT_EQ(order, pseudo_random_order(b, b.full_set()));
}
