#include <gtest/gtest.h>

#include <random>

#include "pss/polynomial.hpp"

namespace {

using pss::BigradedIndex;
using pss::Monomial;
using pss::PolyQ;
using pss::Rational;

PolyQ x(int m) { return PolyQ::x(m); }

PolyQ random_poly(std::mt19937& rng, int lo, int hi, int max_charge) {
  std::uniform_int_distribution<int> idx(lo, hi);
  std::uniform_int_distribution<int> charge(0, max_charge);
  std::uniform_int_distribution<int> coef(-5, 5);
  std::uniform_int_distribution<int> nterms(1, 4);
  PolyQ p;
  for (int t = nterms(rng); t > 0; --t) {
    std::vector<int> ms;
    for (int c = charge(rng); c > 0; --c) ms.push_back(idx(rng));
    p.add(Monomial(ms), coef(rng));
  }
  return p;
}

// homogeneous of a random bidegree
PolyQ random_homogeneous(std::mt19937& rng, int charge) {
  std::uniform_int_distribution<int> weight(charge, charge + 6);
  const auto basis = pss::enumerate_monomials({weight(rng), charge}, -1);
  std::uniform_int_distribution<int> coef(-4, 4);
  PolyQ p;
  for (const auto& m : basis) p.add(m, coef(rng));
  if (p.is_zero()) p.add(basis.front(), 1);
  return p;
}

// partitions of n into exactly k parts, by the recurrence p(n,k) = p(n-1,k-1) + p(n-k,k)
long partitions_exact(int n, int k) {
  if (n == 0 && k == 0) return 1;
  if (n <= 0 || k <= 0) return 0;
  return partitions_exact(n - 1, k - 1) + partitions_exact(n - k, k);
}

TEST(MonoMul, UnitIsIdentity) {
  PolyQ p = x(-2) + Rational(3) * x(-5);
  EXPECT_EQ(pss::mono_mul(PolyQ::one(), p), p);
}

TEST(MonoMul, Square) { EXPECT_EQ(pss::mono_mul(x(-1), x(-1)), PolyQ(Monomial{-1, -1})); }

TEST(MonoMul, Distributes) {
  EXPECT_EQ(pss::mono_mul(x(-1) + x(-2), x(-1)), PolyQ(Monomial{-1, -1}) + PolyQ(Monomial{-2, -1}));
}

TEST(Render, CanonicalText) {
  PolyQ r = Rational(2) * PolyQ(Monomial{-3, -1}) + PolyQ(Monomial{-2, -2});
  EXPECT_EQ(r.str(), "2*x(-3)*x(-1) + x(-2)^2");
  EXPECT_EQ(PolyQ().str(), "0");
  EXPECT_EQ((PolyQ::one() - x(-1)).str(), "1 - x(-1)");
  EXPECT_EQ((pss::make_rational(-1, 2) * x(-4)).str(), "-1/2*x(-4)");
}

TEST(Tau, ShiftsSquare) { EXPECT_EQ(pss::tau_power(PolyQ(Monomial{-1, -1}), 1), PolyQ(Monomial{-2, -2})); }

TEST(Tau, ZeroPowerIsIdentity) {
  PolyQ p = x(-1) * x(-3) + Rational(7) * x(2);
  EXPECT_EQ(pss::tau_power(p, 0), p);
}

TEST(Tau, InverseShiftsUp) {
  EXPECT_EQ(pss::tau_power(PolyQ(Monomial{-2, -3}), -1), PolyQ(Monomial{-1, -2}));
  // tau^{-1} reaches index 0
  EXPECT_EQ(pss::tau_power(x(-1), -1), x(0));
}

TEST(Rho, KillsXMinusOne) { EXPECT_TRUE(pss::rho_project(PolyQ(Monomial{-1, -1})).is_zero()); }

TEST(Rho, R4) {
  PolyQ r4 = Rational(2) * PolyQ(Monomial{-3, -1}) + PolyQ(Monomial{-2, -2});
  EXPECT_EQ(pss::rho_project(r4), PolyQ(Monomial{-2, -2}));
}

TEST(Rho, FixedPoint) {
  PolyQ p(Monomial{-2, -3});
  EXPECT_EQ(pss::rho_project(p), p);
}

TEST(Rho, RejectsNonNegativeIndices) { EXPECT_THROW(pss::rho_project(x(0)), std::domain_error); }

TEST(Derivation, Generator) { EXPECT_EQ(pss::derivation_D(x(-1)), x(-2)); }

TEST(Derivation, SquareOfXMinusOne) {
  EXPECT_EQ(pss::derivation_D(PolyQ(Monomial{-1, -1})), Rational(2) * PolyQ(Monomial{-2, -1}));
}

TEST(Derivation, KillsUnit) { EXPECT_TRUE(pss::derivation_D(PolyQ::one()).is_zero()); }

TEST(Enumerate, WeightFourChargeTwo) {
  auto got = pss::enumerate_monomials({4, 2}, -1);
  EXPECT_EQ(got, (std::vector<Monomial>{Monomial{-3, -1}, Monomial{-2, -2}}));
}

TEST(Enumerate, EmptyWhenFloorTooLow) { EXPECT_TRUE(pss::enumerate_monomials({2, 2}, -2).empty()); }

TEST(Enumerate, ChargeZero) {
  EXPECT_EQ(pss::enumerate_monomials({0, 0}, -1), std::vector<Monomial>{Monomial{}});
  EXPECT_EQ(pss::enumerate_monomials({0, 0}, -3), std::vector<Monomial>{Monomial{}});
  EXPECT_TRUE(pss::enumerate_monomials({3, 0}, -1).empty());
}

TEST(Enumerate, CountsMatchPartitionRecurrence) {
  for (int n = 0; n <= 16; ++n) {
    for (int k = 0; k <= n; ++k) {
      const auto list = pss::enumerate_monomials({n, k}, -1);
      EXPECT_EQ(static_cast<long>(list.size()), partitions_exact(n, k)) << n << "," << k;
      EXPECT_TRUE(std::is_sorted(list.begin(), list.end()));
      for (const auto& m : list) {
        EXPECT_EQ(m.grade(), (BigradedIndex{n, k}));
        EXPECT_TRUE(m.below(-1));
      }
    }
  }
}

TEST(Enumerate, FloorRespected) {
  // parts >= 3: shift each part down by 2, i.e. partitions of n - 2k into k parts
  for (int n = 0; n <= 14; ++n)
    for (int k = 1; k <= 4; ++k) {
      const auto list = pss::enumerate_monomials({n, k}, -3);
      EXPECT_EQ(static_cast<long>(list.size()), partitions_exact(n - 2 * k, k));
      for (const auto& m : list) EXPECT_TRUE(m.below(-3));
    }
}

TEST(Properties, BigradingAdditive) {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    const PolyQ a = random_homogeneous(rng, 1 + trial % 3);
    const PolyQ b = random_homogeneous(rng, 1 + trial % 2);
    const auto ga = *a.homogeneous_grade();
    const auto gb = *b.homogeneous_grade();
    const auto gp = (a * b).homogeneous_grade();
    ASSERT_TRUE(gp.has_value());
    EXPECT_EQ(*gp, (BigradedIndex{ga.weight + gb.weight, ga.charge + gb.charge}));
    EXPECT_EQ(a * b, b * a);
  }
}

TEST(Properties, TauComposes) {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> shift(-3, 3);
  for (int trial = 0; trial < 200; ++trial) {
    const PolyQ p = random_poly(rng, -6, 4, 4);
    const int s = shift(rng);
    const int t = shift(rng);
    EXPECT_EQ(pss::tau_power(pss::tau_power(p, t), s), pss::tau_power(p, s + t));
  }
}

TEST(Properties, TauWeightShift) {
  std::mt19937 rng(13);
  std::uniform_int_distribution<int> shift(-3, 3);
  for (int trial = 0; trial < 100; ++trial) {
    const int k = trial % 4;
    const PolyQ a = k == 0 ? Rational(trial + 1) * PolyQ::one() : random_homogeneous(rng, k);
    const int s = shift(rng);
    const PolyQ img = pss::tau_power(a, s);
    const auto g = *a.homogeneous_grade();
    const auto gi = *img.homogeneous_grade();
    EXPECT_EQ(gi.charge, g.charge);
    EXPECT_EQ(gi.weight, g.weight + k * s);
    if (k == 0) { EXPECT_EQ(img, a); }
    if (k > 0 && s > 0) { EXPECT_GT(gi.weight, g.weight); }
    if (k > 0 && s < 0) { EXPECT_LT(gi.weight, g.weight); }
  }
}

TEST(Properties, Leibniz) {
  std::mt19937 rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    const PolyQ a = random_poly(rng, -7, 3, 3);
    const PolyQ b = random_poly(rng, -7, 3, 3);
    EXPECT_EQ(pss::derivation_D(a * b), pss::derivation_D(a) * b + a * pss::derivation_D(b));
  }
}

TEST(Properties, DerivationRaisesWeightByOne) {
  std::mt19937 rng(19);
  for (int trial = 0; trial < 50; ++trial) {
    const PolyQ a = random_homogeneous(rng, 1 + trial % 4);
    const auto g = *a.homogeneous_grade();
    const auto gd = pss::derivation_D(a).homogeneous_grade();
    ASSERT_TRUE(gd.has_value());
    EXPECT_EQ(*gd, (BigradedIndex{g.weight + 1, g.charge}));
  }
}

TEST(Properties, RhoIdempotent) {
  std::mt19937 rng(23);
  for (int trial = 0; trial < 100; ++trial) {
    const PolyQ p = random_poly(rng, -6, -1, 4);
    const PolyQ once = pss::rho_project(p);
    EXPECT_EQ(pss::rho_project(once), once);
    EXPECT_TRUE(once.supported_below(-2));
  }
}

}  // namespace
