#include <gtest/gtest.h>

#include "corpus.hpp"
#include "grpdb/automorphisms.hpp"
#include "grpdb/structure.hpp"
#include "grpdb/subgroup_lattice.hpp"
#include "oracle.hpp"

using namespace grpdb;

namespace {

// |Aut(G)| by trying every image pair of a two-element generating set.
std::size_t naive_aut_order(const std::string& name) {
  const oracle::Group G = oracle::closure(testing_corpus::entry(name).generators);
  const int n = static_cast<int>(G.order());
  int a = -1, b = -1;
  for (int x = 0; x < n && a < 0; ++x)
    for (int y = 0; y < n; ++y)
      if (oracle::generated(G, {x, y}).size() == G.order()) {
        a = x;
        b = y;
        break;
      }
  std::size_t count = 0;
  for (int x = 0; x < n; ++x) {
    if (G.order_of_elt(x) != G.order_of_elt(a)) continue;
    for (int y = 0; y < n; ++y)
      if (G.order_of_elt(y) == G.order_of_elt(b) && oracle::is_isomorphism(G, {a, b}, G, {x, y})) ++count;
  }
  return count;
}

std::string aut_order(const std::string& name) {
  const PermGroup g = testing_corpus::group(name);
  return automorphism_group(g, conjugacy_classes(g)).order.str();
}

}  // namespace

class AutOrder : public ::testing::TestWithParam<std::string> {};

TEST_P(AutOrder, MatchesExhaustiveCount) {
  EXPECT_EQ(aut_order(GetParam()), std::to_string(naive_aut_order(GetParam())));
}

INSTANTIATE_TEST_SUITE_P(TwoGenerated, AutOrder,
                         ::testing::Values("S3", "D4", "Q8", "A4", "C2^2", "D6", "Dic3", "C4:C4", "SD16", "F5",
                                           "S4", "SL(2,3)"),
                         [](const auto& info) {
                           std::string s;
                           for (char c : info.param) s += std::isalnum(static_cast<unsigned char>(c)) ? c : '_';
                           return s;
                         });

TEST(Automorphisms, KnownOrders) {
  EXPECT_EQ(aut_order("C2^3"), "168");
  EXPECT_EQ(aut_order("C12"), "4");
  EXPECT_EQ(aut_order("A5"), "120");
  EXPECT_EQ(aut_order("C1"), "1");
}

TEST(Automorphisms, InnerAndOuter) {
  const PermGroup g = testing_corpus::group("D4");
  const AutomorphismGroup aut = automorphism_group(g, conjugacy_classes(g));
  EXPECT_EQ(aut.inner_order, 4);
  EXPECT_EQ(aut.outer_order(), 2);
  for (const auto& a : aut.generators) {
    for (Elt x = 0; x < g.order(); ++x)
      for (Elt y = 0; y < g.order(); ++y) EXPECT_EQ(a(g.mul(x, y)), g.mul(a(x), a(y)));
  }
}

TEST(Automorphisms, AutjugacyMergesOrderEightSubgroupsOfC2To5) {
  const PermGroup g = testing_corpus::group("C2^5");
  const ClassPartition classes = conjugacy_classes(g);
  const AutomorphismGroup aut = automorphism_group(g, classes, 1u << 20);
  const SubgroupEnumeration subs = all_subgroups(g, 5000);
  ASSERT_TRUE(subs.complete);
  const SubgroupPartition part = conjugacy_classes_of_subgroups(g, subs);
  const auto orbit = autjugacy_classes(subs, part, aut);
  std::set<std::size_t> eight;
  std::size_t conj8 = 0;
  for (std::size_t c = 0; c < part.classes.size(); ++c)
    if (part.classes[c].order == 8) {
      ++conj8;
      eight.insert(orbit[c]);
    }
  EXPECT_EQ(conj8, 155u);
  EXPECT_EQ(eight.size(), 1u);
}

TEST(Automorphisms, BudgetExceeded) {
  const PermGroup g = testing_corpus::group("S5");
  EXPECT_THROW(automorphism_group(g, conjugacy_classes(g), 100), BudgetExceeded);
}
