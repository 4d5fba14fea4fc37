#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "sintra/entropy.hpp"
#include "sintra/intra_pred.hpp"
#include "sintra/variant.hpp"

namespace sintra {

/// Per-block outcome of mode decision, for luma and chroma blocks alike.
struct ModeDecision {
  BlockRef block;
  IntraMode mode;
  InterpKind interp = InterpKind::Bilinear;  ///< for per-sample selection: Nearest if any sample used it
  bool flag_signaled = false;
  double cost = 0.0;
  std::uint64_t distortion = 0;  ///< SSE
  double rate = 0.0;             ///< bits
  std::vector<std::uint8_t> nearest_mask;  ///< per-sample choices, per-sample selection only

  bool same_choice(const ModeDecision& o) const {
    return block == o.block && mode == o.mode && interp == o.interp && flag_signaled == o.flag_signaled &&
           nearest_mask == o.nearest_mask;
  }
};

struct RdoConfig {
  CodecParams params;
  double lambda = 0.0;
  int candidate_list_size = 8;
};

/// 0.85 * 2^((qp - 12) / 3); qp must lie in [0, 51].
double lambda_from_qp(int qp);

/// distortion + lambda * rate; both terms must be non-negative.
double rd_cost(double distortion, double rate, double lambda);

/// A (mode, interpolation) pair considered by the search. For implicit
/// policies `interp` is resolved at prediction time and left Bilinear here.
struct Candidate {
  IntraMode mode;
  InterpKind interp = InterpKind::Bilinear;
  InterpSource source = InterpSource::Bilinear;

  bool signaled() const { return source == InterpSource::Signaled; }
  bool operator==(const Candidate&) const = default;
};

/// Expands modes into search candidates. Under the rdo variant every mode
/// contributes (mode, Bilinear), and oblique modes eligible for the flag also
/// contribute (mode, Nearest); other variants contribute one candidate per
/// mode carrying the variant's policy.
std::vector<Candidate> enumerate_candidates(std::span<const IntraMode> modes, int size, const CodecParams& params);

/// All 35 modes in index order.
std::vector<IntraMode> all_modes();

/// Everything the search reads: source and reconstructed planes of one
/// component, the block, the coder state and the interpolation-flag context.
struct BlockEnv {
  const Plane& original;
  const Plane& recon;
  BlockRef block;
  const ContextSet& contexts;
  int interp_ctx = 0;
};

/// Full trial of one candidate: predict, transform/quantize, reconstruct,
/// and estimate the rate of mode, flag and residual syntax.
struct TrialResult {
  Candidate candidate;
  InterpKind applied = InterpKind::Bilinear;
  std::vector<std::uint8_t> nearest_mask;
  std::vector<std::int32_t> levels;
  std::vector<Sample> recon;
  std::uint64_t distortion = 0;
  std::uint64_t rate_cost = 0;  ///< 1/32768 bit units
  double cost = 0.0;
  ContextSet contexts_after;

  double rate_bits() const { return static_cast<double>(rate_cost) * kCostScale; }
};

TrialResult evaluate_candidate(const BlockEnv& env, const RdoConfig& cfg, const Candidate& candidate);
TrialResult evaluate_candidate(const BlockEnv& env, const ReferenceSamples& refs, const RdoConfig& cfg,
                               const Candidate& candidate);

struct LumaChoice {
  ModeDecision decision;
  std::vector<IntraMode> finalist_modes;  ///< stage-1 survivors, in rank order
  std::vector<Candidate> finalists;      ///< their eligible pairs
  TrialResult trial;                 ///< the winning trial
};

/// Two-stage luma search. Every eligible pair is scored by prediction SAD
/// plus a flat mode-bit estimate; the candidate_list_size modes with the best
/// pair score survive, and the pair of minimum full rate-distortion cost over
/// all eligible pairs of those modes is chosen (first one on ties).
LumaChoice choose(const BlockEnv& env, const RdoConfig& cfg);

/// Chroma inherits the luma interpolation when it uses the derived mode;
/// its other modes are never oblique, so they need no flag.
InterpKind derive_chroma_interp(const ModeDecision& luma, bool chroma_mode_is_derived);

struct ChromaChoice {
  int chroma_index = 4;
  std::vector<ModeDecision> decisions;  ///< one per chroma plane
  std::vector<TrialResult> trials;
  std::uint64_t rate_cost = 0;
  double cost = 0.0;
  ContextSet contexts_after;
};

/// Picks the chroma mode (4 fixed candidates plus derived) for the chroma
/// planes of a 4:4:4 frame, coding both chroma residuals per candidate.
ChromaChoice choose_chroma(const Frame& original, const Frame& recon, const BlockRef& luma_block,
                           const ModeDecision& luma, const ContextSet& contexts, const RdoConfig& cfg);

}  // namespace sintra
