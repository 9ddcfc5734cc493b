#include <gtest/gtest.h>

#include "grpdb/error.hpp"
#include "grpdb/cyclotomic.hpp"
#include "oracle.hpp"

using namespace grpdb;

TEST(Cyclotomic, SumOfRootsVanishes) {
  for (std::uint64_t n : {2u, 3u, 5u, 6u, 8u, 12u, 15u}) {
    Cyclotomic s;
    for (std::uint64_t k = 0; k < n; ++k) s += Cyclotomic::root_of_unity(n, static_cast<long long>(k));
    EXPECT_TRUE(s.is_zero()) << n;
  }
}

TEST(Cyclotomic, ReducesToMinimalConductor) {
  EXPECT_EQ(Cyclotomic::root_of_unity(4, 2), Cyclotomic(-1));
  EXPECT_EQ(Cyclotomic::root_of_unity(12, 4).conductor(), 3u);
  EXPECT_EQ(Cyclotomic::root_of_unity(6, 1).conductor(), 3u);
  EXPECT_TRUE((Cyclotomic::root_of_unity(8, 1) * Cyclotomic::root_of_unity(8, 7)).is_rational());
}

TEST(Cyclotomic, Arithmetic) {
  const Cyclotomic z = Cyclotomic::root_of_unity(5, 1);
  const Cyclotomic one(1);
  EXPECT_EQ(z * z.conj(), one);
  EXPECT_EQ((z + one) - z, one);
  Cyclotomic p = one;
  for (int i = 0; i < 5; ++i) p *= z;
  EXPECT_EQ(p, one);
  EXPECT_EQ(z.galois(2), z * z);
  EXPECT_THROW(z.rational_value(), DomainError);
  EXPECT_EQ(Cyclotomic(7).rational_value(), 7);
}

TEST(Cyclotomic, StringEvaluatesToComplexValue) {
  const std::vector<Cyclotomic> values{
      Cyclotomic(-1),
      Cyclotomic::root_of_unity(5, 3) * Cyclotomic(2),
      Cyclotomic::root_of_unity(8, 1) - Cyclotomic::root_of_unity(8, 3),
      Cyclotomic::root_of_unity(7, 1) + Cyclotomic::root_of_unity(7, 2) + Cyclotomic::root_of_unity(7, 4),
      Cyclotomic(Rational(1, 2)) * Cyclotomic::root_of_unity(3, 1),
      Cyclotomic::root_of_unity(15, 4) - Cyclotomic::root_of_unity(15, 7) * Cyclotomic(3),
  };
  for (const auto& v : values) {
    const auto expect = v.to_complex();
    const auto got = oracle::eval_cyclotomic(v.str());
    EXPECT_NEAR(got.real(), expect.real(), 1e-9) << v.str();
    EXPECT_NEAR(got.imag(), expect.imag(), 1e-9) << v.str();
  }
}

TEST(Cyclotomic, FromRootsMatchesSum) {
  const Cyclotomic a = Cyclotomic::from_roots(6, std::vector<long long>{1, 0, 2, 0, 0, -1});
  const Cyclotomic b = Cyclotomic(1) + Cyclotomic(2) * Cyclotomic::root_of_unity(6, 2) - Cyclotomic::root_of_unity(6, 5);
  EXPECT_EQ(a, b);
}

TEST(Cyclotomic, EulerPhi) {
  EXPECT_EQ(euler_phi(1), 1u);
  EXPECT_EQ(euler_phi(12), 4u);
  EXPECT_EQ(euler_phi(97), 96u);
  EXPECT_EQ(euler_phi(100), 40u);
}
