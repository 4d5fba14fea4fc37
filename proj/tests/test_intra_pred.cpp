#include <gtest/gtest.h>

#include <random>

#include "sintra/intra_pred.hpp"
#include "support/oracle.hpp"

using namespace sintra;

namespace {

std::vector<int> as_ints(const PredBlock& p) { return {p.samples.begin(), p.samples.end()}; }

}  // namespace

TEST(IntraMode, RangeAndFamilies) {
  EXPECT_THROW(IntraMode(35), UsageError);
  EXPECT_THROW(IntraMode(-1), UsageError);
  EXPECT_TRUE(IntraMode(17).is_horizontal_family());
  EXPECT_FALSE(IntraMode(18).is_horizontal_family());
  EXPECT_EQ(IntraMode(26).angle(), 0);
  EXPECT_EQ(IntraMode(2).angle(), 32);
  EXPECT_EQ(IntraMode(18).angle(), -32);
}

TEST(IntraMode, IntegerSlopeSet) {
  for (int m = 0; m < IntraMode::kCount; ++m) {
    const bool expect = m == 0 || m == 1 || m == 2 || m == 10 || m == 18 || m == 26 || m == 34;
    EXPECT_EQ(is_integer_slope(IntraMode(m)), expect) << m;
  }
}

TEST(Predict, MatchesOracleForEveryModeAndSize) {
  std::mt19937_64 rng(11);
  for (int n : {4, 8, 16, 32}) {
    for (int trial = 0; trial < 20; ++trial) {
      const int bd = trial % 2 ? 10 : 8;
      const auto b = oracle::random_boundary(rng, n, bd);
      const auto refs = oracle::to_refs(b, bd);
      for (int m = 0; m < IntraMode::kCount; ++m) {
        EXPECT_EQ(as_ints(predict(refs, IntraMode(m), InterpKind::Bilinear)), oracle::predict(b, m, false))
            << "n " << n << " mode " << m;
        EXPECT_EQ(as_ints(predict(refs, IntraMode(m), InterpKind::Nearest)), oracle::predict(b, m, true))
            << "n " << n << " mode " << m;
      }
    }
  }
}

TEST(Predict, HorizontalRowsCopyLeftReference) {
  std::mt19937_64 rng(12);
  const auto b = oracle::random_boundary(rng, 8, 8);
  const auto refs = oracle::to_refs(b, 8);
  for (InterpKind k : {InterpKind::Bilinear, InterpKind::Nearest}) {
    const PredBlock p = predict(refs, IntraMode(10), k);
    for (int y = 0; y < 8; ++y) {
      for (int x = 0; x < 8; ++x) EXPECT_EQ(p.at(x, y), refs.left(y));
    }
  }
}

TEST(Predict, HandEvaluatedFraction) {
  // Mode 27 has slope 2, so row 3 of a 4x4 block sits at f = 8 with B = top[0]
  // and C = top[1] for x = 0.
  ReferenceSamples refs(4, 8);
  for (auto& e : refs.entries()) e = 0;
  refs.set_top(1, 255);
  EXPECT_EQ(predict(refs, IntraMode(27), InterpKind::Bilinear).at(0, 3), 64);
  EXPECT_EQ(predict(refs, IntraMode(27), InterpKind::Nearest).at(0, 3), 0);
}

TEST(Predict, HalfwayTieGoesToC) {
  // Row 7 of an 8x8 block under mode 27 sits at f = 16.
  ReferenceSamples refs(8, 8);
  for (int i = 0; i < 16; ++i) refs.set_top(i, static_cast<Sample>(10 * i));
  const PredBlock nn = predict(refs, IntraMode(27), InterpKind::Nearest);
  for (int x = 0; x < 8; ++x) EXPECT_EQ(nn.at(x, 7), refs.top(x + 1));
}

TEST(Predict, NearestOutputIsAReferenceAndBilinearIsBounded) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 300; ++trial) {
    const auto b = oracle::random_boundary(rng, 4, 8);
    const auto refs = oracle::to_refs(b, 8);
    const auto entries = refs.entries();
    for (int m = 2; m < IntraMode::kCount; ++m) {
      const PredBlock nn = predict(refs, IntraMode(m), InterpKind::Nearest);
      for (Sample s : nn.samples) EXPECT_NE(std::find(entries.begin(), entries.end(), s), entries.end());
      const PredBlock bil = predict(refs, IntraMode(m), InterpKind::Bilinear);
      const auto lo = *std::min_element(entries.begin(), entries.end());
      const auto hi = *std::max_element(entries.begin(), entries.end());
      for (Sample s : bil.samples) {
        EXPECT_GE(s, lo);
        EXPECT_LE(s, hi);
      }
    }
  }
}

TEST(Predict, BilinearBetweenFlankingSamples) {
  // Oracle-level check of the per-position bound, with the pair exposed.
  std::mt19937_64 rng(14);
  for (int trial = 0; trial < 200; ++trial) {
    const auto b = oracle::random_boundary(rng, 4, 10);
    for (int m = 2; m < IntraMode::kCount; ++m) {
      std::vector<std::pair<int, int>> pairs;
      oracle::predict_with(b, m, [&](int bv, int cv) {
        pairs.emplace_back(bv, cv);
        return oracle::Rule::Bilinear;
      });
      for (auto [bv, cv] : pairs) {
        for (int f = 1; f < 32; ++f) {
          const int v = ((32 - f) * bv + f * cv + 16) >> 5;
          EXPECT_GE(v, std::min(bv, cv));
          EXPECT_LE(v, std::max(bv, cv));
        }
      }
    }
  }
}

TEST(Predict, NearestAnnotationOnlyAtFractionalPositions) {
  std::mt19937_64 rng(15);
  const auto refs = oracle::to_refs(oracle::random_boundary(rng, 8, 8), 8);
  for (int m : {0, 1, 2, 10, 18, 26, 34}) {
    EXPECT_EQ(predict(refs, IntraMode(m), InterpKind::Nearest).nearest_count(), 0) << m;
  }
  // Mode 23 (slope -9) is fractional on every row.
  EXPECT_EQ(predict(refs, IntraMode(23), InterpKind::Nearest).nearest_count(), 64);
  EXPECT_EQ(predict(refs, IntraMode(23), InterpKind::Bilinear).nearest_count(), 0);
}

TEST(Predict, IntegerSlopeKindsAgree) {
  std::mt19937_64 rng(16);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto refs = oracle::to_refs(oracle::random_boundary(rng, 4 << (trial % 4), 8), 8);
    for (int m : {0, 1, 2, 10, 18, 26, 34}) {
      EXPECT_EQ(predict(refs, IntraMode(m), InterpKind::Bilinear).samples,
                predict(refs, IntraMode(m), InterpKind::Nearest).samples);
    }
  }
}

TEST(PredictAdaptive, MatchesOracle) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    const auto b = oracle::random_boundary(rng, 4 << (trial % 3), 8);
    const auto refs = oracle::to_refs(b, 8);
    for (int m = 0; m < IntraMode::kCount; ++m) {
      EXPECT_EQ(as_ints(predict_adaptive(refs, IntraMode(m), 128)), oracle::predict_pixdiff(b, m, 128));
    }
  }
}

TEST(PredictAdaptive, ThresholdExtremes) {
  std::mt19937_64 rng(18);
  for (int trial = 0; trial < 100; ++trial) {
    const auto refs = oracle::to_refs(oracle::random_boundary(rng, 4, 8), 8);
    for (int m = 0; m < IntraMode::kCount; ++m) {
      const IntraMode mode(m);
      EXPECT_EQ(predict_adaptive(refs, mode, 1).samples, predict(refs, mode, InterpKind::Nearest).samples);
      const PredBlock off = predict_adaptive(refs, mode, 2 * 255 + 1);
      EXPECT_EQ(off.samples, predict(refs, mode, InterpKind::Bilinear).samples);
      EXPECT_EQ(off.nearest_count(), 0);
    }
  }
  EXPECT_THROW(predict_adaptive(oracle::to_refs(oracle::random_boundary(rng, 4, 8), 8), IntraMode(5), 0), UsageError);
}

TEST(PredictAdaptive, FlatReferencesStayBilinear) {
  ReferenceSamples refs(4, 8);
  for (auto& e : refs.entries()) e = 77;
  for (int m = 0; m < IntraMode::kCount; ++m) {
    const PredBlock p = predict_adaptive(refs, IntraMode(m), 128);
    EXPECT_EQ(p.nearest_count(), 0);
    EXPECT_EQ(p.samples, predict(refs, IntraMode(m), InterpKind::Bilinear).samples);
  }
}

TEST(PredictMasked, ReplaysAdaptiveChoice) {
  std::mt19937_64 rng(19);
  for (int trial = 0; trial < 50; ++trial) {
    const auto refs = oracle::to_refs(oracle::random_boundary(rng, 8, 8), 8);
    for (int m = 2; m < IntraMode::kCount; ++m) {
      const PredBlock a = predict_adaptive(refs, IntraMode(m), 100);
      const PredBlock r = predict_masked(refs, IntraMode(m), a.nearest_used);
      EXPECT_EQ(a.samples, r.samples);
      EXPECT_EQ(a.nearest_used, r.nearest_used);
    }
  }
}

TEST(NnMerge, DeclaredPairsAndBruteForce) {
  EXPECT_EQ(nn_merge_target(IntraMode(9), 4), IntraMode(10));
  EXPECT_EQ(nn_merge_target(IntraMode(11), 4), IntraMode(10));
  EXPECT_EQ(nn_merge_target(IntraMode(25), 4), IntraMode(26));
  EXPECT_EQ(nn_merge_target(IntraMode(27), 4), IntraMode(26));
  EXPECT_FALSE(nn_merge_target(IntraMode(22), 4));
  EXPECT_FALSE(nn_merge_target(IntraMode(9), 8));

  // Brute force over random references: which oblique modes share their
  // Nearest predictor with an integer-slope mode at 4x4?
  std::mt19937_64 rng(20);
  std::vector<bool> always_equal(IntraMode::kCount, true);
  std::vector<int> target(IntraMode::kCount, -1);
  for (int trial = 0; trial < 200; ++trial) {
    const auto b = oracle::random_boundary(rng, 4, 8);
    for (int m = 2; m < IntraMode::kCount; ++m) {
      const int t = m < 18 ? 10 : 26;
      if (oracle::predict(b, m, true) != oracle::predict(b, t, true)) always_equal[static_cast<std::size_t>(m)] = false;
    }
  }
  for (int m = 2; m < IntraMode::kCount; ++m) {
    if (m == 10 || m == 26) continue;
    EXPECT_EQ(always_equal[static_cast<std::size_t>(m)], nn_merge_target(IntraMode(m), 4).has_value()) << m;
  }
}

TEST(References, NothingAvailableGivesMidGray) {
  const Plane recon(32, 32, 10, Sample{5});
  const ReferenceSamples refs = build_reference_samples(recon, {0, 0, 0, 8});
  for (Sample s : refs.entries()) EXPECT_EQ(s, 512);
  for (auto a : refs.available()) EXPECT_EQ(a, 0);
}

TEST(References, InteriorBlockReadsBoundary) {
  std::mt19937_64 rng(21);
  std::uniform_int_distribution<int> d(0, 255);
  Plane recon(64, 64, 8);
  for (auto& s : recon.mutable_samples()) s = static_cast<Sample>(d(rng));
  // Block (8, 8) size 4: every neighbour, including below-left (block (4, 12))
  // and above-right, precedes it in z-order.
  const BlockRef blk{0, 8, 8, 4};
  const ReferenceSamples refs = build_reference_samples(recon, blk);
  EXPECT_EQ(refs.corner(), recon.at(7, 7));
  for (int i = 0; i < 8; ++i) EXPECT_EQ(refs.left(i), recon.at(7, 8 + i));
  for (int i = 0; i < 8; ++i) EXPECT_EQ(refs.top(i), recon.at(8 + i, 7));

  // Block (4, 4): below-left (0, 8) and above-right (8, 0) come later.
  const ReferenceSamples late = build_reference_samples(recon, {0, 4, 4, 4});
  for (int i = 0; i < 4; ++i) {
    EXPECT_EQ(late.left(i), recon.at(3, 4 + i));
    EXPECT_EQ(late.top(i), recon.at(4 + i, 3));
  }
  for (int i = 4; i < 8; ++i) {
    EXPECT_EQ(late.left(i), recon.at(3, 7));  // first available entry of the scan
    EXPECT_EQ(late.top(i), recon.at(7, 3));   // predecessor in the scan
  }
}

TEST(References, TopRowBlockPropagatesFromLeft) {
  std::mt19937_64 rng(22);
  std::uniform_int_distribution<int> d(0, 255);
  Plane recon(64, 32, 8);
  for (auto& s : recon.mutable_samples()) s = static_cast<Sample>(d(rng));
  const BlockRef blk{0, 32, 0, 8};  // first block of CTU 1: only the left CTU is coded
  const ReferenceSamples refs = build_reference_samples(recon, blk);

  // Oracle: the substitution scan replayed on the plane in scan order.
  std::vector<int> scan;
  std::vector<bool> avail;
  for (int i = 15; i >= 0; --i) {
    const int y = i;
    avail.push_back(y < 32);
    scan.push_back(y < 32 ? recon.at(31, y) : -1);
  }
  avail.push_back(false);
  scan.push_back(-1);
  for (int i = 0; i < 16; ++i) {
    avail.push_back(false);
    scan.push_back(-1);
  }
  for (std::size_t i = 1; i < scan.size(); ++i) {
    if (!avail[i]) scan[i] = scan[i - 1];
  }
  ASSERT_EQ(refs.entries().size(), scan.size());
  for (std::size_t i = 0; i < scan.size(); ++i) EXPECT_EQ(refs.entries()[i], scan[i]) << i;
  EXPECT_EQ(refs.corner(), recon.at(31, 0));
  EXPECT_EQ(refs.top(15), recon.at(31, 0));
}

TEST(Interp, Names) {
  EXPECT_EQ(parse_interp_kind("nearest"), InterpKind::Nearest);
  EXPECT_EQ(to_string(InterpKind::Bilinear), "bilinear");
  EXPECT_FALSE(parse_interp_kind("cubic"));
}
