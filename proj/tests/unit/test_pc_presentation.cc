#include <gtest/gtest.h>

#include "corpus.hpp"
#include "grpdb/error.hpp"
#include "grpdb/pc_presentation.hpp"
#include "grpdb/structure.hpp"
#include "oracle.hpp"

using namespace grpdb;

namespace {

// Evaluates g_1^e_1 ... g_n^e_n with naive permutations.
oracle::Perm word_value(const std::vector<oracle::Perm>& gens, const PcWord& w) {
  oracle::Perm x = oracle::identity(gens.front().size());
  for (std::size_t i = 0; i < w.size(); ++i) x = oracle::mul(x, oracle::power(gens[i], w[i]));
  return x;
}

// The relations hold in G, the generators generate G and prod r_i = |G|. A group given by
// such a presentation has order at most prod r_i, so G is isomorphic to it.
void expect_presents(const PermGroup& g, const PcPresentation& p) {
  std::vector<oracle::Perm> gens;
  for (Elt e : p.generators) gens.push_back(oracle::from(g.element(e)));
  std::uint64_t product = 1;
  for (auto r : p.relative_orders) product *= r;
  EXPECT_EQ(product, g.order());
  if (gens.empty()) {
    EXPECT_EQ(g.order(), 1u);
    return;
  }
  EXPECT_EQ(oracle::closure(gens).order(), g.order());
  for (std::size_t i = 0; i < gens.size(); ++i) {
    EXPECT_EQ(oracle::power(gens[i], p.relative_orders[i]), word_value(gens, p.power_relations[i])) << i;
    for (std::size_t j = i + 1; j < gens.size(); ++j) {
      const oracle::Perm conj = oracle::mul(oracle::mul(oracle::inv(gens[i]), gens[j]), gens[i]);
      EXPECT_EQ(conj, word_value(gens, p.conjugation_relations[i][j])) << i << "," << j;
    }
  }
}

}  // namespace

class PresentationSuite : public ::testing::TestWithParam<std::string> {};

TEST_P(PresentationSuite, PresentsTheGroup) {
  const PermGroup g = testing_corpus::group(GetParam());
  const PcPresentation p = optimize_presentation(g);
  expect_presents(g, p);
  EXPECT_TRUE(verify_presentation(g, p));
  const SubnormalChain chain = chain_of(g, p);
  EXPECT_EQ(chain.relative_orders, p.relative_orders);
}

INSTANTIATE_TEST_SUITE_P(Corpus, PresentationSuite,
                         ::testing::Values("C1", "C60", "S3", "D4", "Q8", "A4", "Dic3", "SL(2,3)", "S4", "He3", "C9:C3",
                                           "GL(2,3)", "C2^3:C7", "C2xC4xS3", "C2^6", "C3xSL(2,3)", "Dic50", "D100"),
                         [](const auto& info) {
                           std::string s;
                           for (char c : info.param) s += std::isalnum(static_cast<unsigned char>(c)) ? c : '_';
                           return s;
                         });

TEST(PcPresentation, CyclicGroupsNeedOneGenerator) {
  for (const char* name : {"C2", "C12", "C60", "C128", "C200"}) {
    const PcPresentation p = optimize_presentation(testing_corpus::group(name));
    EXPECT_EQ(p.size(), 1u) << name;
  }
}

TEST(PcPresentation, AbelianGroupsUseInvariantFactorCount) {
  for (const char* name : {"C2^2", "C2xC4", "C2^3", "C3xC6", "C2^2xC12", "C4xC16"}) {
    const PermGroup g = testing_corpus::group(name);
    const PcPresentation p = optimize_presentation(g);
    EXPECT_EQ(p.size(), abelianization_invariants(g).size()) << name;
  }
}

TEST(PcPresentation, DisplayOfS3) {
  const PcPresentation p = optimize_presentation(testing_corpus::group("S3"));
  EXPECT_EQ(p.str(), "⟨a, b | a^2, b^3, b^a = b^2⟩");
}

TEST(PcPresentation, Deterministic) {
  for (const char* name : {"SL(2,3)", "C3xS3", "D4"}) {
    const auto a = optimize_presentation(testing_corpus::group(name)).str();
    const auto b = optimize_presentation(testing_corpus::group(name)).str();
    EXPECT_EQ(a, b);
  }
}

TEST(PcPresentation, NonSolvableRejected) {
  const PermGroup a5 = testing_corpus::group("A5");
  EXPECT_FALSE(is_solvable(a5));
  EXPECT_THROW(optimize_presentation(a5), DomainError);
  EXPECT_THROW(minimal_chains(a5), DomainError);
}

TEST(PcPresentation, MinimalChainsHaveMinimalLength) {
  const PermGroup g = testing_corpus::group("C2xC4");
  const auto chains = minimal_chains(g);
  ASSERT_FALSE(chains.empty());
  for (const auto& c : chains) {
    EXPECT_EQ(c.length(), 2u);
    EXPECT_EQ(c.terms.front().size(), g.order());
    EXPECT_EQ(c.terms.back().size(), 1u);
  }
}

TEST(PcPresentation, CollectorAgreesWithMultiplication) {
  const PermGroup g = testing_corpus::group("SL(2,3)");
  const PcPresentation p = optimize_presentation(g);
  const SubnormalChain chain = chain_of(g, p);
  for (Elt x = 0; x < g.order(); x += 5)
    for (Elt y = 0; y < g.order(); y += 7) {
      const PcWord wx = decompose(g, p.generators, p.relative_orders, chain.terms, x);
      const PcWord wy = decompose(g, p.generators, p.relative_orders, chain.terms, y);
      EXPECT_EQ(collect(p, wx, wy), decompose(g, p.generators, p.relative_orders, chain.terms, g.mul(x, y)));
    }
  EXPECT_EQ(reconstruct(p).order(), g.order());
}

TEST(PcPresentation, ScoreOrdering) {
  PresentationScore a{2, 1, 0, 0}, b{1, 5, 5, 5};
  EXPECT_GT(a.compare(b), 0);
  EXPECT_LT(b.compare(a), 0);
  EXPECT_EQ(a.compare(a), 0);
  // Fewer increasing relative-order pairs is better; deeper conjugation relations are better.
  EXPECT_GT((PresentationScore{1, 1, 0, 0}).compare(PresentationScore{1, 1, 2, 9}), 0);
  EXPECT_GT((PresentationScore{1, 1, 0, 3}).compare(PresentationScore{1, 1, 0, 1}), 0);
}
