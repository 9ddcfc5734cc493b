#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "corpus.hpp"
#include "grpdb/families.hpp"
#include "grpdb/iso_hash.hpp"
#include "oracle.hpp"

using namespace grpdb;

namespace {

// The same group on relabeled points.
std::vector<Permutation> relabel(const std::vector<Permutation>& gens, unsigned seed) {
  const std::size_t n = gens.front().degree();
  std::vector<Permutation::Point> images(n);
  std::iota(images.begin(), images.end(), 0);
  std::mt19937 rng(seed);
  std::shuffle(images.begin(), images.end(), rng);
  const Permutation s = Permutation::from_images(images);
  std::vector<Permutation> out;
  for (const auto& g : gens) out.push_back(s * g * s.inverse());
  return out;
}

void expect_witness(const PermGroup& a, const PermGroup& b, const IsoResult& r) {
  ASSERT_EQ(r.status, IsoStatus::isomorphic);
  const oracle::Group A = oracle::closure(std::vector<Permutation>(a.generators()));
  const oracle::Group B = oracle::closure(std::vector<Permutation>(b.generators()));
  std::vector<int> src, dst;
  for (Elt e : r.source_generators) src.push_back(A.index(oracle::from(a.element(e))));
  for (Elt e : r.images) dst.push_back(B.index(oracle::from(b.element(e))));
  ASSERT_EQ(oracle::generated(A, src).size(), A.order());
  EXPECT_TRUE(oracle::is_isomorphism(A, src, B, dst));
}

}  // namespace

TEST(IsoHash, InvariantUnderRelabelingAndRegularRepresentation) {
  for (const char* name : {"S3", "Q8", "D4", "A4", "SL(2,3)", "C2xQ8", "He3", "C9:C3", "A5"}) {
    const auto& gens = testing_corpus::entry(name).generators;
    const PermGroup g = PermGroup::generate(gens);
    const PermGroup relabeled = PermGroup::generate(relabel(gens, 7));
    const PermGroup regular = PermGroup::generate(families::regular(g));
    EXPECT_EQ(group_hash(g).value, group_hash(relabeled).value) << name;
    EXPECT_EQ(group_hash(g).value, group_hash(regular).value) << name;
    expect_witness(g, regular, is_isomorphic(g, regular));
    expect_witness(regular, relabeled, is_isomorphic(regular, relabeled));
  }
}

TEST(IsoHash, HexFormat) {
  const std::string h = group_hash(testing_corpus::group("S3")).hex();
  EXPECT_EQ(h.size(), 16u);
  EXPECT_TRUE(std::all_of(h.begin(), h.end(), [](char c) { return std::isxdigit(c) && !std::isupper(c); }));
}

TEST(IsoHash, DistinguishesSameOrderGroups) {
  const std::vector<std::string> names{"C8", "C2xC4", "C2^3", "D4", "Q8"};
  std::set<std::uint64_t> hashes;
  for (const auto& n : names) hashes.insert(group_hash(testing_corpus::group(n)).value);
  EXPECT_EQ(hashes.size(), names.size());
}

TEST(IsoHash, NonIsomorphicPairsAreRejected) {
  const PermGroup d4 = testing_corpus::group("D4");
  const PermGroup q8 = testing_corpus::group("Q8");
  EXPECT_EQ(is_isomorphic(d4, q8).status, IsoStatus::not_isomorphic);
  EXPECT_EQ(is_isomorphic(testing_corpus::group("S4"), testing_corpus::group("SL(2,3)")).status,
            IsoStatus::not_isomorphic);
  EXPECT_EQ(is_isomorphic(testing_corpus::group("C6"), testing_corpus::group("S3")).status, IsoStatus::not_isomorphic);
}

TEST(IsoHash, MixTokensIsOrderSensitive) {
  const std::vector<std::uint64_t> a{1, 2, 3}, b{3, 2, 1};
  EXPECT_NE(mix_tokens(a), mix_tokens(b));
  EXPECT_EQ(mix_tokens(a), mix_tokens(std::vector<std::uint64_t>{1, 2, 3}));
}

TEST(IsoHash, DedupeOrderEight) {
  std::vector<PermGroup> groups;
  unsigned seed = 1;
  for (const char* name : {"C8", "C2xC4", "C2^3", "D4", "Q8"}) {
    const auto& gens = testing_corpus::entry(name).generators;
    groups.push_back(PermGroup::generate(gens));
    groups.push_back(PermGroup::generate(relabel(gens, seed++)));
    groups.push_back(PermGroup::generate(families::regular(groups.back())));
  }
  std::vector<const PermGroup*> ptrs;
  for (const auto& g : groups) ptrs.push_back(&g);
  const auto classes = dedupe(ptrs);
  ASSERT_EQ(classes.size(), 5u);
  for (std::size_t i = 0; i < classes.size(); ++i) {
    EXPECT_EQ(classes[i].members, (std::vector<std::size_t>{3 * i, 3 * i + 1, 3 * i + 2}));
    EXPECT_FALSE(classes[i].unresolved);
  }
}
