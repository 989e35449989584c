#include "indist/symgroup.hpp"

#include <map>
#include <random>
#include <set>

#include <gtest/gtest.h>

#include "indist/errors.hpp"

namespace indist {
namespace {

TEST(Permutation, ComposeAppliesRightFactorFirst) {
  const Permutation a({1, 2, 0});
  const Permutation b({0, 2, 1});
  const Permutation ab = a * b;
  for (int x = 0; x < 3; ++x) EXPECT_EQ(ab(x), a(b(x)));
}

TEST(Permutation, RejectsNonBijection) {
  EXPECT_THROW(Permutation({0, 0, 1}), ArgumentError);
  EXPECT_THROW(Permutation({0, 3, 1}), ArgumentError);
}

TEST(Permutation, InverseAndIdentity) {
  for (const auto& p : enumerate_permutations(4)) {
    EXPECT_TRUE((p * p.inverse()).is_identity());
    EXPECT_TRUE((p.inverse() * p).is_identity());
  }
}

TEST(Permutation, RankRoundTripsAndFollowsLexOrder) {
  const auto perms = enumerate_permutations(5);
  ASSERT_EQ(perms.size(), 120u);
  EXPECT_TRUE(perms.front().is_identity());
  for (std::size_t i = 0; i < perms.size(); ++i) {
    EXPECT_EQ(perms[i].rank(), i);
    EXPECT_EQ(Permutation::from_rank(5, i), perms[i]);
    if (i > 0) {
      EXPECT_LT(perms[i - 1].images(), perms[i].images());
    }
  }
}

TEST(SymmetricGroup, EnumerationIsCappedAtTen) {
  EXPECT_THROW(enumerate_permutations(11), SizeLimitError);
}

TEST(SymmetricGroup, EnumerationSizes) {
  for (int n = 0; n <= 7; ++n) {
    const auto perms = enumerate_permutations(n);
    EXPECT_EQ(static_cast<double>(perms.size()), factorial(n));
    std::set<std::vector<int>> distinct;
    for (const auto& p : perms) distinct.insert(p.images());
    EXPECT_EQ(distinct.size(), perms.size());
  }
}

TEST(CycleType, OfExamplePermutation) {
  // (0 1 2)(3 4)(5)
  const Permutation p({1, 2, 0, 4, 3, 5});
  const CycleType ct = cycle_type(p);
  EXPECT_EQ(ct.counts, (std::vector<int>{1, 1, 1, 0, 0, 0}));
  EXPECT_EQ(ct.degree(), 6);
}

TEST(CycleType, ClassSizesMatchEnumeration) {
  for (int n = 1; n <= 7; ++n) {
    std::map<CycleType, int> tally;
    for (const auto& p : enumerate_permutations(n)) ++tally[cycle_type(p)];
    const auto types = enumerate_cycle_types(n);
    EXPECT_EQ(types.size(), tally.size());
    EXPECT_EQ(types.front().counts[0], n);
    for (const auto& ct : types) EXPECT_DOUBLE_EQ(ct.class_size(), tally.at(ct));
  }
}

TEST(CycleType, ConjugationInvariant) {
  std::mt19937_64 rng(7);
  const auto perms = enumerate_permutations(6);
  std::uniform_int_distribution<std::size_t> pick(0, perms.size() - 1);
  for (int trial = 0; trial < 200; ++trial) {
    const auto& s = perms[pick(rng)];
    const auto& t = perms[pick(rng)];
    EXPECT_EQ(cycle_type(t * s * t.inverse()), cycle_type(s));
  }
}

TEST(ModeSubgroup, OrderAndElements) {
  const Occupation n{2, 0, 1, 3};
  const ModeSubgroup g = ModeSubgroup::of(n);
  EXPECT_EQ(g.modes(), (ModeList{0, 0, 2, 3, 3, 3}));
  EXPECT_DOUBLE_EQ(g.order(), multiplicity(n));
  EXPECT_DOUBLE_EQ(g.order(), 12.0);
  const auto elems = g.elements();
  ASSERT_EQ(elems.size(), 12u);
  EXPECT_TRUE(elems.front().is_identity());
  std::size_t members = 0;
  for (const auto& p : enumerate_permutations(6)) {
    if (g.contains(p)) ++members;
  }
  EXPECT_EQ(members, 12u);
  for (std::size_t i = 0; i < elems.size(); ++i) {
    EXPECT_TRUE(g.contains(elems[i]));
    if (i > 0) EXPECT_LT(elems[i - 1].images(), elems[i].images());
  }
}

TEST(ModeSubgroup, ClosedUnderCompositionAndInverse) {
  const ModeSubgroup g(ModeList{0, 0, 0, 1, 1});
  const auto elems = g.elements();
  for (const auto& a : elems) {
    EXPECT_TRUE(g.contains(a.inverse()));
    for (const auto& b : elems) EXPECT_TRUE(g.contains(a * b));
  }
}

TEST(CycleIndex, DegreeThreeClosedForm) {
  const std::vector<double> a{1.3, -0.4, 2.1};
  const double expected = (a[0] * a[0] * a[0] + 3 * a[0] * a[1] + 2 * a[2]) / 6.0;
  EXPECT_NEAR(cycle_index(3, a), expected, 1e-14);
}

TEST(CycleIndex, AgreesWithEnumeration) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  for (int n = 1; n <= 8; ++n) {
    std::vector<double> a(n);
    for (auto& v : a) v = u(rng);
    double brute = 0.0;
    for_each_permutation(n, [&](const Permutation& p) {
      double term = 1.0;
      for (const auto& c : p.cycles()) term *= a[c.size() - 1];
      brute += term;
    });
    brute /= factorial(n);
    EXPECT_NEAR(cycle_index(n, a), brute, 1e-12 * std::max(1.0, std::abs(brute))) << "n=" << n;
  }
}

TEST(CycleIndex, AllOnesGivesOne) {
  for (int n = 1; n <= 20; ++n) {
    EXPECT_NEAR(cycle_index(n, std::vector<double>(n, 1.0)), 1.0, 1e-12);
  }
}

}  // namespace
}  // namespace indist
