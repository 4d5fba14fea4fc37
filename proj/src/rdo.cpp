#include "sintra/rdo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "sintra/syntax.hpp"
#include "sintra/transform.hpp"

namespace sintra {

namespace {

// Flat mode-bit estimate used to rank candidates before the full trial.
constexpr double kStageOneModeBits = 6.0;

double finish_cost(const RdoConfig& cfg, std::uint64_t distortion, std::uint64_t rate_cost) {
  const double bits = static_cast<double>(rate_cost) * kCostScale;
  return cfg.params.lossless() ? bits : rd_cost(static_cast<double>(distortion), bits, cfg.lambda);
}

}  // namespace

double lambda_from_qp(int qp) {
  if (qp < 0 || qp > 51) throw UsageError("qp out of range: " + std::to_string(qp));
  return 0.85 * std::pow(2.0, (qp - 12) / 3.0);
}

double rd_cost(double distortion, double rate, double lambda) {
  if (distortion < 0 || rate < 0) throw UsageError("distortion and rate must be non-negative");
  return distortion + lambda * rate;
}

std::vector<IntraMode> all_modes() {
  std::vector<IntraMode> modes;
  for (int m = 0; m < IntraMode::kCount; ++m) modes.emplace_back(m);
  return modes;
}

std::vector<Candidate> enumerate_candidates(std::span<const IntraMode> modes, int size, const CodecParams& params) {
  std::vector<Candidate> out;
  for (IntraMode mode : modes) {
    const InterpSource source = interp_source(params, size, mode);
    if (source == InterpSource::Signaled) {
      out.push_back({mode, InterpKind::Bilinear, source});
      out.push_back({mode, InterpKind::Nearest, source});
    } else {
      out.push_back({mode, source == InterpSource::Nearest ? InterpKind::Nearest : InterpKind::Bilinear, source});
    }
  }
  return out;
}

TrialResult evaluate_candidate(const BlockEnv& env, const RdoConfig& cfg, const Candidate& candidate) {
  return evaluate_candidate(env, build_reference_samples(env.recon, env.block), cfg, candidate);
}

TrialResult evaluate_candidate(const BlockEnv& env, const ReferenceSamples& refs, const RdoConfig& cfg,
                               const Candidate& candidate) {
  const BlockRef& block = env.block;
  const bool chroma = block.plane_index > 0;
  const int bit_depth = env.original.bit_depth();
  const SelectorConfig selectors = cfg.params.selectors(bit_depth);
  const PredBlock pred = predict_with_source(refs, candidate.mode, candidate.source, selectors, candidate.interp);

  TrialResult t;
  t.candidate = candidate;
  t.applied = applied_interp(refs, candidate.mode, candidate.source, selectors, candidate.interp, pred);
  if (candidate.source == InterpSource::PixDiff) t.nearest_mask = pred.nearest_used;

  const auto orig = extract_block(env.original, block);
  std::vector<std::int32_t> residual(orig.size());
  for (std::size_t i = 0; i < orig.size(); ++i) residual[i] = static_cast<std::int32_t>(orig[i]) - pred.samples[i];
  const QuantParams qp{cfg.params.qp, bit_depth, cfg.params.lossless()};
  t.levels = transform_quant(residual, block.size, qp);
  const auto rec_residual = dequant_inverse(t.levels, block.size, qp);
  const int max = env.original.max_value();
  t.recon.resize(orig.size());
  for (std::size_t i = 0; i < orig.size(); ++i) {
    t.recon[i] = static_cast<Sample>(std::clamp(pred.samples[i] + rec_residual[i], 0, max));
  }
  t.distortion = sse(orig, t.recon);

  t.contexts_after = env.contexts;
  RateEstimator est;
  if (!chroma) {
    write_luma_mode(est, t.contexts_after, candidate.mode);
    if (candidate.signaled()) {
      write_interp_flag(est, t.contexts_after, cfg.params.single_context ? 0 : env.interp_ctx, candidate.interp);
    }
  }
  write_residual(est, t.contexts_after, t.levels, block.size, chroma, cfg.params.lossless());
  t.rate_cost = est.cost();
  t.cost = finish_cost(cfg, t.distortion, t.rate_cost);
  return t;
}

LumaChoice choose(const BlockEnv& env, const RdoConfig& cfg) {
  const BlockRef& block = env.block;
  const ReferenceSamples refs = build_reference_samples(env.recon, block);
  const auto modes = all_modes();
  const auto candidates = enumerate_candidates(modes, block.size, cfg.params);
  const SelectorConfig selectors = cfg.params.selectors(env.original.bit_depth());
  const auto orig = extract_block(env.original, block);

  const double sad_lambda = cfg.params.lossless() ? 1.0 : std::sqrt(cfg.lambda);
  // Stage 1 scores each mode by its best eligible pair and keeps the top
  // modes; stage 2 tries every eligible pair of the kept modes.
  std::vector<double> score(modes.size(), std::numeric_limits<double>::infinity());
  for (const Candidate& c : candidates) {
    const PredBlock pred = predict_with_source(refs, c.mode, c.source, selectors, c.interp);
    const double bits = kStageOneModeBits + (c.signaled() ? 1.0 : 0.0);
    auto& s = score[static_cast<std::size_t>(c.mode.index())];
    s = std::min(s, static_cast<double>(sad_block(orig, pred.samples)) + sad_lambda * bits);
  }
  std::vector<std::size_t> order(modes.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return score[a] < score[b]; });
  const auto keep = std::min<std::size_t>(order.size(), static_cast<std::size_t>(std::max(1, cfg.candidate_list_size)));

  LumaChoice out;
  for (std::size_t r = 0; r < keep; ++r) out.finalist_modes.push_back(modes[order[r]]);
  out.finalists = enumerate_candidates(out.finalist_modes, block.size, cfg.params);
  bool have = false;
  for (const Candidate& c : out.finalists) {
    TrialResult t = evaluate_candidate(env, refs, cfg, c);
    if (!have || t.cost < out.trial.cost) {
      out.trial = std::move(t);
      have = true;
    }
  }

  ModeDecision& d = out.decision;
  d.block = block;
  d.mode = out.trial.candidate.mode;
  d.interp = out.trial.applied;
  d.flag_signaled = out.trial.candidate.signaled();
  d.cost = out.trial.cost;
  d.distortion = out.trial.distortion;
  d.rate = out.trial.rate_bits();
  d.nearest_mask = out.trial.nearest_mask;
  return out;
}

InterpKind derive_chroma_interp(const ModeDecision& luma, bool chroma_mode_is_derived) {
  return chroma_mode_is_derived ? luma.interp : InterpKind::Bilinear;
}

ChromaChoice choose_chroma(const Frame& original, const Frame& recon, const BlockRef& luma_block,
                           const ModeDecision& luma, const ContextSet& contexts, const RdoConfig& cfg) {
  ChromaChoice best;
  bool have = false;
  for (int index = 0; index <= kChromaDerived; ++index) {
    const bool derived = index == kChromaDerived;
    const IntraMode mode = chroma_mode_for(index, luma.mode);
    const InterpSource source = interp_source(cfg.params, luma_block.size, mode);
    const InterpKind interp = source == InterpSource::Nearest ? InterpKind::Nearest
                                                              : derive_chroma_interp(luma, derived);
    const Candidate candidate{mode, interp, source};

    ChromaChoice trial;
    trial.chroma_index = index;
    trial.contexts_after = contexts;
    RateEstimator est;
    write_chroma_mode(est, trial.contexts_after, index);
    trial.rate_cost = est.cost();
    std::uint64_t distortion = 0;
    for (int p = 1; p < original.plane_count(); ++p) {
      BlockRef block = luma_block;
      block.plane_index = p;
      const BlockEnv env{original.plane(p), recon.plane(p), block, trial.contexts_after, 0};
      TrialResult t = evaluate_candidate(env, cfg, candidate);
      trial.contexts_after = t.contexts_after;
      trial.rate_cost += t.rate_cost;
      distortion += t.distortion;

      ModeDecision d;
      d.block = block;
      d.mode = mode;
      d.interp = t.applied;
      d.cost = t.cost;
      d.distortion = t.distortion;
      d.rate = t.rate_bits();
      d.nearest_mask = t.nearest_mask;
      trial.decisions.push_back(std::move(d));
      trial.trials.push_back(std::move(t));
    }
    trial.cost = finish_cost(cfg, distortion, trial.rate_cost);
    if (!have || trial.cost < best.cost) {
      best = std::move(trial);
      have = true;
    }
  }
  return best;
}

}  // namespace sintra
