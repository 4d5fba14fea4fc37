#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "sintra/selectors.hpp"
#include "support/oracle.hpp"

using namespace sintra;

namespace {

int expected_category(int mode) {
  if (mode >= 3 && mode <= 9) return 1;
  if ((mode >= 11 && mode <= 17) || (mode >= 19 && mode <= 25)) return 2;
  if (mode >= 27 && mode <= 33) return 3;
  return 0;
}

std::vector<int> members(const ReferenceSamples& refs, const RefCategory& c) {
  std::vector<int> out;
  for (int i : c.members(refs.size())) out.push_back(refs.entries()[static_cast<std::size_t>(i)]);
  return out;
}

}  // namespace

TEST(Category, FollowsTable) {
  for (int m = 0; m < IntraMode::kCount; ++m) {
    const auto c = category_of(IntraMode(m));
    const int expect = expected_category(m);
    if (expect == 0) {
      EXPECT_FALSE(c) << m;
    } else {
      ASSERT_TRUE(c) << m;
      EXPECT_EQ(c->id, expect) << m;
    }
  }
  EXPECT_EQ(category_of(IntraMode(5))->id, 1);
  EXPECT_EQ(category_of(IntraMode(20))->id, 2);
  EXPECT_FALSE(category_of(IntraMode(26)));
}

TEST(Category, FourByFourMembersAreTheLetteredSamples) {
  std::mt19937_64 rng(31);
  const auto b = oracle::random_boundary(rng, 4, 8);
  const auto refs = oracle::to_refs(b, 8);
  for (int id = 1; id <= 3; ++id) {
    auto got = members(refs, RefCategory{id});
    auto expect = oracle::category_members_4x4(b, id);
    std::sort(got.begin(), got.end());
    std::sort(expect.begin(), expect.end());
    EXPECT_EQ(got, expect) << id;
  }
}

TEST(Category, LargerBlocksScaleProportionally) {
  for (int n : {8, 16, 32}) {
    EXPECT_EQ(RefCategory{1}.members(n).size(), static_cast<std::size_t>(2 * n));
    EXPECT_EQ(RefCategory{2}.members(n).size(), static_cast<std::size_t>(2 * n + 1));
    EXPECT_EQ(RefCategory{3}.members(n).size(), static_cast<std::size_t>(2 * n));
  }
  EXPECT_THROW(RefCategory{4}.members(4), UsageError);
}

TEST(ReferenceSad, Examples) {
  ReferenceSamples refs(4, 8);
  for (auto& e : refs.entries()) e = 90;
  EXPECT_EQ(reference_sad(refs, RefCategory{1}).value(), 0.0);
  for (int i = 0; i < 8; ++i) refs.set_top(i, i % 2 ? 255 : 0);
  EXPECT_DOUBLE_EQ(reference_sad(refs, RefCategory{3}).value(), 1020.0);
}

TEST(ReferenceSad, MatchesRationalOracle) {
  std::mt19937_64 rng(32);
  for (int trial = 0; trial < 2000; ++trial) {
    const auto b = oracle::random_boundary(rng, 4, trial % 2 ? 10 : 8);
    const auto refs = oracle::to_refs(b, trial % 2 ? 10 : 8);
    for (int id = 1; id <= 3; ++id) {
      const ReferenceSad got = reference_sad(refs, RefCategory{id});
      const oracle::Fraction expect = oracle::deviation_sum(oracle::category_members_4x4(b, id));
      // got.scaled / got.count == expect.p / expect.q
      EXPECT_EQ(static_cast<long long>(got.scaled) * expect.q, expect.p * static_cast<long long>(got.count));
      for (long long t : {1LL, 64LL, 256LL, 1000LL}) EXPECT_EQ(got.at_least(t), oracle::at_least(expect, t));
    }
  }
}

TEST(ReferenceSad, InvariantUnderPermutationAndOffset) {
  std::mt19937_64 rng(33);
  for (int trial = 0; trial < 200; ++trial) {
    auto b = oracle::random_boundary(rng, 4, 8);
    for (auto& v : b.top) v = v / 2;
    const auto base = reference_sad(oracle::to_refs(b, 8), RefCategory{3});
    auto shuffled = b;
    std::shuffle(shuffled.top.begin(), shuffled.top.end(), rng);
    const auto perm = reference_sad(oracle::to_refs(shuffled, 8), RefCategory{3});
    EXPECT_EQ(base.scaled * perm.count, perm.scaled * base.count);
    auto shifted = b;
    for (auto& v : shifted.top) v += 100;
    const auto off = reference_sad(oracle::to_refs(shifted, 8), RefCategory{3});
    EXPECT_EQ(base.scaled * off.count, off.scaled * base.count);
  }
}

TEST(SelectBySad, ThresholdBoundary) {
  const SelectorConfig cfg{64, 128, 8};
  ReferenceSamples refs(4, 8);
  for (auto& e : refs.entries()) e = 100;
  EXPECT_EQ(select_by_sad(refs, IntraMode(30), cfg), InterpKind::Bilinear);
  // Category 3 members: 8 top samples. Four at 100 + 8, four at 100 - 8:
  // mean 100, SAD exactly 64.
  for (int i = 0; i < 8; ++i) refs.set_top(i, static_cast<Sample>(i < 4 ? 108 : 92));
  EXPECT_DOUBLE_EQ(reference_sad(refs, RefCategory{3}).value(), 64.0);
  EXPECT_EQ(select_by_sad(refs, IntraMode(30), cfg), InterpKind::Nearest);
  refs.set_top(0, 107);
  EXPECT_LT(reference_sad(refs, RefCategory{3}).value(), 64.0);
  EXPECT_EQ(select_by_sad(refs, IntraMode(30), cfg), InterpKind::Bilinear);
  for (int i = 0; i < 8; ++i) refs.set_top(i, i % 2 ? 255 : 0);
  EXPECT_EQ(select_by_sad(refs, IntraMode(30), cfg), InterpKind::Nearest);
  EXPECT_THROW(select_by_sad(refs, IntraMode(26), cfg), UsageError);
  EXPECT_THROW(select_by_sad(refs, IntraMode(0), cfg), UsageError);
}

TEST(SelectBySad, NonIntegerMeanUsesExactComparison) {
  // Category 2 has 9 members at 4x4: SAD = scaled / 9.
  const SelectorConfig cfg{64, 128, 8};
  std::mt19937_64 rng(34);
  int near_threshold = 0;
  for (int trial = 0; trial < 20000; ++trial) {
    auto b = oracle::random_boundary(rng, 4, 8);
    for (auto& v : b.left) v = 100 + v % 24;
    for (auto& v : b.top) v = 100 + v % 24;
    b.corner = 100 + b.corner % 24;
    const auto f = oracle::deviation_sum(oracle::category_members_4x4(b, 2));
    const InterpKind expect = oracle::at_least(f, 64) ? InterpKind::Nearest : InterpKind::Bilinear;
    EXPECT_EQ(select_by_sad(oracle::to_refs(b, 8), IntraMode(20), cfg), expect);
    if (std::abs(static_cast<double>(f.p) / static_cast<double>(f.q) - 64.0) < 1.0) ++near_threshold;
  }
  EXPECT_GT(near_threshold, 0);
}

TEST(Thresholds, Scaling) {
  EXPECT_EQ(scaled_threshold(64, 8), 64);
  EXPECT_EQ(scaled_threshold(64, 10), 256);
  EXPECT_EQ(scaled_threshold(128, 10), 512);
  EXPECT_EQ(scaled_threshold(128, 12), 2048);
  EXPECT_THROW(scaled_threshold(64, 9), UsageError);
  const SelectorConfig cfg{64, 128, 10};
  EXPECT_EQ(cfg.scaled_sad(), 256);
  EXPECT_EQ(cfg.scaled_pixdiff(), 512);
}

TEST(SelectBySad, BitDepthShiftInvariance) {
  std::mt19937_64 rng(35);
  for (int trial = 0; trial < 2000; ++trial) {
    const auto b8 = oracle::random_boundary(rng, 4 << (trial % 3), 8);
    auto b10 = b8;
    for (auto& v : b10.left) v <<= 2;
    for (auto& v : b10.top) v <<= 2;
    b10.corner <<= 2;
    for (int m = 3; m <= 33; ++m) {
      if (!category_of(IntraMode(m))) continue;
      EXPECT_EQ(select_by_sad(oracle::to_refs(b8, 8), IntraMode(m), {64, 128, 8}),
                select_by_sad(oracle::to_refs(b10, 10), IntraMode(m), {64, 128, 10}));
    }
  }
}
