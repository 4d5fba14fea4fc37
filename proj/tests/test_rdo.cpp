#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "sintra/rdo.hpp"
#include "sintra/syntax.hpp"
#include "support/oracle.hpp"

using namespace sintra;

namespace {

std::vector<IntraMode> modes_of(std::initializer_list<int> ids) {
  std::vector<IntraMode> out;
  for (int i : ids) out.emplace_back(i);
  return out;
}

CodecParams params(Variant v, int qp = 27) {
  CodecParams p;
  p.variant = v;
  p.qp = qp;
  return p;
}

RdoConfig rdo_config(Variant v, int qp, int list = 8) {
  return {params(v, qp), qp == 0 ? 0.0 : lambda_from_qp(qp), list};
}

// Recon plane holding the patch's boundary around a 4x4 block at (4, 4).
struct PatchScene {
  Plane original{32, 32, 8};
  Plane recon{32, 32, 8};
  BlockRef block{0, 4, 4, 4};
};

PatchScene patch_scene(const oracle::TwoTonePatch& p) {
  PatchScene s;
  for (int i = 0; i < 4; ++i) {
    s.recon.at(3, 4 + i) = static_cast<Sample>(p.refs.left[static_cast<std::size_t>(i)]);
    s.recon.at(4 + i, 3) = static_cast<Sample>(p.refs.top[static_cast<std::size_t>(i)]);
  }
  s.recon.at(3, 3) = static_cast<Sample>(p.refs.corner);
  for (int y = 0; y < 4; ++y) {
    for (int x = 0; x < 4; ++x) s.original.at(4 + x, 4 + y) = static_cast<Sample>(p.block[static_cast<std::size_t>(y * 4 + x)]);
  }
  return s;
}

}  // namespace

TEST(Lambda, Values) {
  EXPECT_DOUBLE_EQ(lambda_from_qp(12), 0.85);
  EXPECT_NEAR(lambda_from_qp(27), 27.2, 1e-9);
  EXPECT_THROW(lambda_from_qp(52), UsageError);
  EXPECT_THROW(lambda_from_qp(-1), UsageError);
}

TEST(RdCost, Values) {
  EXPECT_EQ(rd_cost(0, 0, 5.0), 0.0);
  EXPECT_EQ(rd_cost(100, 10, 2.0), 120.0);
  EXPECT_THROW(rd_cost(-1, 0, 1.0), UsageError);
  std::mt19937_64 rng(61);
  std::uniform_real_distribution<double> d(0, 1000);
  for (int i = 0; i < 1000; ++i) {
    const double a = d(rng), b = d(rng), l = d(rng) / 10;
    EXPECT_DOUBLE_EQ(rd_cost(a, b, l), a + l * b);
  }
}

TEST(Enumerate, Examples) {
  const CodecParams p = params(Variant::Rdo);
  const auto plain = enumerate_candidates(modes_of({0, 1, 10, 26}), 4, p);
  ASSERT_EQ(plain.size(), 4u);
  for (const auto& c : plain) {
    EXPECT_EQ(c.interp, InterpKind::Bilinear);
    EXPECT_FALSE(c.signaled());
  }
  const auto oblique = enumerate_candidates(modes_of({22}), 4, p);
  ASSERT_EQ(oblique.size(), 2u);
  EXPECT_EQ(oblique[0].interp, InterpKind::Bilinear);
  EXPECT_EQ(oblique[1].interp, InterpKind::Nearest);
  EXPECT_TRUE(oblique[1].signaled());
  EXPECT_EQ(enumerate_candidates(modes_of({9}), 4, p).size(), 1u);
  EXPECT_EQ(enumerate_candidates(modes_of({9}), 8, p).size(), 1u);
  EXPECT_EQ(enumerate_candidates(modes_of({22}), 8, p).size(), 1u);
  CodecParams all = p;
  all.restrict_4x4 = false;
  EXPECT_EQ(enumerate_candidates(modes_of({22}), 8, all).size(), 2u);
  EXPECT_EQ(enumerate_candidates(modes_of({9}), 8, all).size(), 2u);
}

TEST(Enumerate, FlagEligibilityOverAllModes) {
  for (int size : {4, 8, 16, 32}) {
    for (const auto& c : enumerate_candidates(all_modes(), size, params(Variant::Rdo))) {
      if (!c.signaled()) continue;
      EXPECT_EQ(size, 4);
      EXPECT_FALSE(is_integer_slope(c.mode));
      EXPECT_FALSE(nn_merge_target(c.mode, size));
    }
  }
  EXPECT_EQ(enumerate_candidates(all_modes(), 4, params(Variant::Rdo)).size(), 35u + 24u);
  for (Variant v : {Variant::BilinearOnly, Variant::NnAllBlocks, Variant::Nn4x4Only, Variant::Sad, Variant::PixDiff}) {
    for (const auto& c : enumerate_candidates(all_modes(), 4, params(v))) EXPECT_FALSE(c.signaled());
  }
}

TEST(InterpSource, Variants) {
  const IntraMode m22(22), m26(26);
  EXPECT_EQ(interp_source(params(Variant::BilinearOnly), 4, m22), InterpSource::Bilinear);
  EXPECT_EQ(interp_source(params(Variant::NnAllBlocks), 32, m22), InterpSource::Nearest);
  EXPECT_EQ(interp_source(params(Variant::Nn4x4Only), 4, m22), InterpSource::Nearest);
  EXPECT_EQ(interp_source(params(Variant::Nn4x4Only), 8, m22), InterpSource::Bilinear);
  EXPECT_EQ(interp_source(params(Variant::Sad), 4, m22), InterpSource::SadSelect);
  EXPECT_EQ(interp_source(params(Variant::Sad), 8, m22), InterpSource::Bilinear);
  EXPECT_EQ(interp_source(params(Variant::PixDiff), 4, m22), InterpSource::PixDiff);
  EXPECT_EQ(interp_source(params(Variant::Rdo), 4, m22), InterpSource::Signaled);
  for (Variant v : all_variants()) EXPECT_EQ(interp_source(params(v), 4, m26), InterpSource::Bilinear);
}

TEST(Choose, ConstantBlockNeedsNoResidual) {
  Plane orig(32, 32, 8, Sample{128});
  Plane recon(32, 32, 8, Sample{0});
  const ContextSet ctx;
  const BlockEnv env{orig, recon, {0, 0, 0, 8}, ctx, 0};
  const LumaChoice c = choose(env, rdo_config(Variant::Rdo, 27));
  EXPECT_EQ(c.decision.distortion, 0u);
  EXPECT_EQ(c.decision.interp, InterpKind::Bilinear);
  EXPECT_FALSE(c.decision.flag_signaled);
  for (auto v : c.trial.levels) EXPECT_EQ(v, 0);
}

TEST(Choose, TwoTonePatchPicksNearestAtAlignedMode) {
  const auto patch = oracle::find_two_tone_patch();
  ASSERT_TRUE(patch);
  const PatchScene s = patch_scene(*patch);
  const ContextSet ctx;
  for (int qp : {22, 27, 32, 37}) {
    const BlockEnv env{s.original, s.recon, s.block, ctx, 0};
    const LumaChoice c = choose(env, rdo_config(Variant::Rdo, qp));
    EXPECT_EQ(c.decision.mode.index(), patch->mode) << qp;
    EXPECT_EQ(c.decision.interp, InterpKind::Nearest) << qp;
    EXPECT_TRUE(c.decision.flag_signaled) << qp;
    EXPECT_EQ(c.decision.distortion, 0u) << qp;
  }
}

TEST(Choose, ArgminOverExhaustiveAndFinalistSets) {
  std::mt19937_64 rng(62);
  const ContextSet ctx;
  for (int trial = 0; trial < 60; ++trial) {
    const int bd = trial % 3 == 0 ? 10 : 8;
    const int size = 4 << (trial % 3);
    Plane orig(32, 32, bd), recon(32, 32, bd);
    std::uniform_int_distribution<int> d(0, (1 << bd) - 1);
    for (auto& v : orig.mutable_samples()) v = static_cast<Sample>(d(rng));
    for (auto& v : recon.mutable_samples()) v = static_cast<Sample>(d(rng));
    const BlockRef blk{0, size, size, size};
    const BlockEnv env{orig, recon, blk, ctx, static_cast<int>(rng() % 3)};
    const Variant v = all_variants()[static_cast<std::size_t>(trial % 6)];
    const int qp = trial % 5 == 0 ? 0 : 22 + 5 * (trial % 4);

    const LumaChoice full = choose(env, rdo_config(v, qp, 35));
    auto ranked = full.finalists;
    auto by_index = [](const Candidate& a, const Candidate& b) {
      return std::pair(a.mode.index(), a.interp) < std::pair(b.mode.index(), b.interp);
    };
    std::sort(ranked.begin(), ranked.end(), by_index);
    EXPECT_EQ(ranked, enumerate_candidates(all_modes(), size, params(v, qp)));
    for (const Candidate& c : enumerate_candidates(all_modes(), size, params(v, qp))) {
      EXPECT_LE(full.decision.cost, evaluate_candidate(env, rdo_config(v, qp, 35), c).cost);
    }

    const LumaChoice fast = choose(env, rdo_config(v, qp, 8));
    const Candidate chosen = fast.trial.candidate;
    EXPECT_NE(std::find(fast.finalists.begin(), fast.finalists.end(), chosen), fast.finalists.end());
    EXPECT_EQ(fast.decision.cost, evaluate_candidate(env, rdo_config(v, qp, 8), chosen).cost);
    for (const Candidate& c : fast.finalists) {
      EXPECT_LE(fast.decision.cost, evaluate_candidate(env, rdo_config(v, qp, 8), c).cost);
    }
  }
}

TEST(Choose, ShrinkingTheListNeverAddsCandidates) {
  std::mt19937_64 rng(63);
  Plane orig(32, 32, 8), recon(32, 32, 8);
  std::uniform_int_distribution<int> d(0, 255);
  for (auto& v : orig.mutable_samples()) v = static_cast<Sample>(d(rng));
  for (auto& v : recon.mutable_samples()) v = static_cast<Sample>(d(rng));
  const ContextSet ctx;
  const BlockEnv env{orig, recon, {0, 4, 4, 4}, ctx, 1};
  std::vector<Candidate> prev;
  for (int k = 35; k >= 1; --k) {
    const auto f = choose(env, rdo_config(Variant::Rdo, 27, k)).finalists;
    if (k < 35) {
      for (const auto& c : f) EXPECT_NE(std::find(prev.begin(), prev.end(), c), prev.end());
    }
    prev = f;
  }
}

TEST(Choose, LosslessHasZeroDistortion) {
  std::mt19937_64 rng(64);
  Plane orig(32, 32, 8), recon(32, 32, 8);
  std::uniform_int_distribution<int> d(0, 255);
  for (auto& v : orig.mutable_samples()) v = static_cast<Sample>(d(rng));
  const ContextSet ctx;
  for (Variant v : all_variants()) {
    const LumaChoice c = choose({orig, recon, {0, 8, 8, 8}, ctx, 0}, rdo_config(v, 0));
    EXPECT_EQ(c.decision.distortion, 0u);
    EXPECT_DOUBLE_EQ(c.decision.cost, c.decision.rate);
  }
}

TEST(ChromaInterp, Derivation) {
  ModeDecision luma;
  luma.mode = IntraMode(22);
  luma.interp = InterpKind::Nearest;
  EXPECT_EQ(derive_chroma_interp(luma, true), InterpKind::Nearest);
  EXPECT_EQ(derive_chroma_interp(luma, false), InterpKind::Bilinear);
  luma.mode = IntraMode(10);
  luma.interp = InterpKind::Bilinear;
  EXPECT_EQ(derive_chroma_interp(luma, true), InterpKind::Bilinear);
}

TEST(ChromaChoice, DerivedModeInheritsNearest) {
  const auto patch = oracle::find_two_tone_patch();
  ASSERT_TRUE(patch);
  const PatchScene s = patch_scene(*patch);
  const Frame orig({s.original, s.original, s.original});
  const Frame recon({s.recon, s.recon, s.recon});
  const ContextSet ctx;
  const RdoConfig cfg = rdo_config(Variant::Rdo, 27);
  const LumaChoice luma = choose({orig.plane(0), recon.plane(0), s.block, ctx, 0}, cfg);
  const ChromaChoice ch = choose_chroma(orig, recon, s.block, luma.decision, luma.trial.contexts_after, cfg);
  EXPECT_EQ(ch.chroma_index, kChromaDerived);
  ASSERT_EQ(ch.decisions.size(), 2u);
  for (const auto& d : ch.decisions) {
    EXPECT_EQ(d.interp, InterpKind::Nearest);
    EXPECT_FALSE(d.flag_signaled);
    EXPECT_EQ(d.distortion, 0u);
  }
}
