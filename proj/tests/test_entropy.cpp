#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "sintra/entropy.hpp"
#include "sintra/syntax.hpp"

using namespace sintra;

namespace {

struct Op {
  int kind;  // 0 context, 1 bypass, 2 bypass bits
  int ctx;
  std::uint32_t value;
  int bits;
};

}  // namespace

TEST(BinContext, UpdateRuleAndRange) {
  BinContext c;
  EXPECT_EQ(c.p1, 1 << 14);
  c.update(1);
  EXPECT_EQ(c.p1, (1 << 14) + ((32768 - (1 << 14)) >> 5));
  c.update(0);
  for (int i = 0; i < 10000; ++i) c.update(1);
  EXPECT_LT(c.p1, BinContext::kOne);
  EXPECT_GT(c.p1, 0);
  for (int i = 0; i < 10000; ++i) c.update(0);
  EXPECT_GT(c.p1, 0);
  EXPECT_LT(c.p1, BinContext::kOne);
}

TEST(Arithmetic, SingleContextRoundTrip) {
  std::mt19937_64 rng(41);
  std::bernoulli_distribution bit(0.3);
  std::vector<int> bins(10000);
  for (auto& b : bins) b = bit(rng);
  ArithmeticEncoder enc;
  BinContext ce;
  for (int b : bins) enc.encode(b, ce);
  const auto bytes = enc.finish();
  ArithmeticDecoder dec(bytes);
  BinContext cd;
  for (int b : bins) ASSERT_EQ(dec.decode(cd), b);
  EXPECT_EQ(ce, cd);
}

TEST(Arithmetic, RandomScheduleRoundTrip) {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<double> bias(7);
    for (auto& p : bias) p = std::uniform_real_distribution<double>(0.01, 0.99)(rng);
    std::vector<Op> ops(3000);
    for (auto& op : ops) {
      op.kind = std::uniform_int_distribution<int>(0, 9)(rng) < 7 ? 0 : std::uniform_int_distribution<int>(1, 2)(rng);
      op.ctx = std::uniform_int_distribution<int>(0, 6)(rng);
      op.bits = std::uniform_int_distribution<int>(1, 16)(rng);
      op.value = op.kind == 2 ? static_cast<std::uint32_t>(rng() & ((1u << op.bits) - 1))
                              : static_cast<std::uint32_t>(std::bernoulli_distribution(bias[static_cast<std::size_t>(op.ctx)])(rng));
    }
    ArithmeticEncoder enc;
    std::vector<BinContext> ce(7), cd(7);
    for (const Op& op : ops) {
      if (op.kind == 0) enc.encode(static_cast<int>(op.value), ce[static_cast<std::size_t>(op.ctx)]);
      else if (op.kind == 1) enc.encode_bypass(static_cast<int>(op.value));
      else enc.encode_bypass_bits(op.value, op.bits);
    }
    const auto bytes = enc.finish();
    ArithmeticDecoder dec(bytes);
    for (const Op& op : ops) {
      if (op.kind == 0) ASSERT_EQ(dec.decode(cd[static_cast<std::size_t>(op.ctx)]), static_cast<int>(op.value));
      else if (op.kind == 1) ASSERT_EQ(dec.decode_bypass(), static_cast<int>(op.value));
      else ASSERT_EQ(dec.decode_bypass_bits(op.bits), op.value);
    }
    EXPECT_EQ(dec.position(), bytes.size());
  }
}

TEST(Arithmetic, AllZeroSourceCompresses) {
  ArithmeticEncoder enc;
  BinContext c;
  double ideal = 0;
  for (int i = 0; i < 10000; ++i) {
    ideal += -std::log2(1.0 - c.p1 / 32768.0);
    enc.encode(0, c);
  }
  const auto bytes = enc.finish();
  EXPECT_LT(bytes.size(), 10000u / 8 / 10);
  EXPECT_LE(static_cast<double>(bytes.size()) * 8, 1.2 * ideal + 64);
}

TEST(Arithmetic, BiasedSourceNearEntropy) {
  std::mt19937_64 rng(43);
  std::bernoulli_distribution bit(0.05);
  const int n = 200000;
  ArithmeticEncoder enc;
  BinContext c;
  for (int i = 0; i < n; ++i) enc.encode(bit(rng), c);
  const double h = -(0.05 * std::log2(0.05) + 0.95 * std::log2(0.95));
  EXPECT_LE(static_cast<double>(enc.finish().size()) * 8, 1.2 * h * n);
}

TEST(Arithmetic, UnderrunIsReported) {
  ArithmeticEncoder enc;
  BinContext c;
  for (int i = 0; i < 1000; ++i) enc.encode(i % 3 == 0, c);
  auto bytes = enc.finish();
  bytes.resize(bytes.size() / 2);
  ArithmeticDecoder dec(bytes);
  BinContext cd;
  EXPECT_THROW(
      {
        for (int i = 0; i < 1000; ++i) dec.decode(cd);
      },
      BitstreamUnderrun);
}

TEST(RateEstimator, MatchesBinCost) {
  RateEstimator est;
  BinContext a, b;
  std::uint64_t total = 0;
  for (int i = 0; i < 100; ++i) {
    total += bin_cost(b, i % 4 == 0);
    b.update(i % 4 == 0);
    est.encode(i % 4 == 0, a);
  }
  est.encode_bypass_bits(0, 3);
  EXPECT_EQ(est.cost(), total + 3 * kBypassCost);
  EXPECT_EQ(a, b);
  EXPECT_NEAR(bin_cost(BinContext{}, 1) * kCostScale, 1.0, 1e-3);
}

TEST(InterpContext, SumOfNeighbourFlags) {
  EXPECT_EQ(interp_context_index(std::nullopt, std::nullopt), 0);
  EXPECT_EQ(interp_context_index(1, 0), 1);
  EXPECT_EQ(interp_context_index(0, 1), 1);
  EXPECT_EQ(interp_context_index(1, 1), 2);
  EXPECT_EQ(interp_context_index(std::nullopt, 1), 1);
  EXPECT_EQ(interp_context_index(1, std::nullopt), 1);
}

TEST(Syntax, ElementsRoundTrip) {
  std::mt19937_64 rng(44);
  ContextSet ce;
  ArithmeticEncoder enc;
  struct Rec {
    int split_ctx;
    bool split;
    int mode;
    int interp_ctx;
    InterpKind interp;
    int chroma;
    std::vector<std::int32_t> levels;
    int size;
    bool lossless;
  };
  std::vector<Rec> recs;
  for (int i = 0; i < 400; ++i) {
    Rec r;
    r.split_ctx = static_cast<int>(rng() % 3);
    r.split = rng() % 2;
    r.mode = static_cast<int>(rng() % 35);
    r.interp_ctx = static_cast<int>(rng() % 3);
    r.interp = rng() % 2 ? InterpKind::Nearest : InterpKind::Bilinear;
    r.chroma = static_cast<int>(rng() % 5);
    r.size = 4 << (rng() % 4);
    r.lossless = rng() % 3 == 0;
    r.levels.assign(static_cast<std::size_t>(r.size * r.size), 0);
    const int nz = static_cast<int>(rng() % 6);
    for (int k = 0; k < nz; ++k) {
      r.levels[rng() % r.levels.size()] = static_cast<std::int32_t>(rng() % 41) - 20;
    }
    write_split_flag(enc, ce, r.split_ctx, r.split);
    write_luma_mode(enc, ce, IntraMode(r.mode));
    write_interp_flag(enc, ce, r.interp_ctx, r.interp);
    write_chroma_mode(enc, ce, r.chroma);
    write_residual(enc, ce, r.levels, r.size, i % 2 == 1, r.lossless);
    recs.push_back(std::move(r));
  }
  const auto bytes = enc.finish();
  ArithmeticDecoder dec(bytes);
  ContextSet cd;
  for (std::size_t i = 0; i < recs.size(); ++i) {
    const Rec& r = recs[i];
    EXPECT_EQ(read_split_flag(dec, cd, r.split_ctx), r.split);
    EXPECT_EQ(read_luma_mode(dec, cd).index(), r.mode);
    EXPECT_EQ(read_interp_flag(dec, cd, r.interp_ctx), r.interp);
    EXPECT_EQ(read_chroma_mode(dec, cd), r.chroma);
    EXPECT_EQ(read_residual(dec, cd, r.size, i % 2 == 1, r.lossless), r.levels);
  }
  EXPECT_EQ(ce, cd);
}

TEST(Syntax, EstimatorMatchesWriterContexts) {
  ContextSet a, b;
  RateEstimator est;
  ArithmeticEncoder enc;
  const std::vector<std::int32_t> levels = {3, -1, 0, 0, 2, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1};
  write_residual(est, a, levels, 4, false, false);
  write_residual(enc, b, levels, 4, false, false);
  write_luma_mode(est, a, IntraMode(22));
  write_luma_mode(enc, b, IntraMode(22));
  EXPECT_EQ(a, b);
}

TEST(Syntax, ChromaModeMapping) {
  EXPECT_EQ(chroma_mode_for(0, IntraMode(22)).index(), 0);
  EXPECT_EQ(chroma_mode_for(1, IntraMode(22)).index(), 26);
  EXPECT_EQ(chroma_mode_for(2, IntraMode(22)).index(), 10);
  EXPECT_EQ(chroma_mode_for(3, IntraMode(22)).index(), 1);
  EXPECT_EQ(chroma_mode_for(1, IntraMode(26)).index(), 34);
  for (int c = 0; c < 4; ++c) {
    for (int m = 0; m < 35; ++m) EXPECT_TRUE(is_integer_slope(chroma_mode_for(c, IntraMode(m))));
  }
}
