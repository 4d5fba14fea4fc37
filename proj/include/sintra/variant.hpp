#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "sintra/intra_pred.hpp"
#include "sintra/selectors.hpp"

namespace sintra {

/// How angular interpolation is chosen across a frame.
enum class Variant : std::uint8_t {
  BilinearOnly = 0,  ///< anchor
  NnAllBlocks = 1,   ///< Nearest on every oblique block
  Nn4x4Only = 2,     ///< Nearest on 4x4 oblique blocks
  Sad = 3,           ///< implicit block-level reference-SAD selector
  PixDiff = 4,       ///< implicit per-sample |B - C| selector
  Rdo = 5,           ///< encoder search with a context-coded flag
};

std::string_view to_string(Variant v);
std::optional<Variant> parse_variant(std::string_view name);
const std::vector<Variant>& all_variants();

/// Where a block's interpolation comes from, given its mode and size.
enum class InterpSource : std::uint8_t { Bilinear, Nearest, SadSelect, PixDiff, Signaled };

/// Decoder-visible coding parameters; everything here travels in the header.
struct CodecParams {
  Variant variant = Variant::BilinearOnly;
  int qp = 27;  ///< 0 selects the lossless regime
  int sad_threshold = 64;       ///< at 8-bit scale
  int pixdiff_threshold = 128;  ///< at 8-bit scale
  bool single_context = false;  ///< one context for the interpolation flag
  bool restrict_4x4 = true;     ///< selective variants act on 4x4 blocks only

  bool lossless() const { return qp == 0; }
  SelectorConfig selectors(int bit_depth) const { return {sad_threshold, pixdiff_threshold, bit_depth}; }
};

/// Interpolation policy for a block. Non-oblique modes are always Bilinear
/// (both kinds coincide there), and at 4x4 the rdo variant does not signal
/// modes 9/11/25/27 because their Nearest predictors equal those of 10/26.
InterpSource interp_source(const CodecParams& params, int size, IntraMode mode);

/// Predicts with the given policy. `signaled` supplies the interpolation for
/// InterpSource::Signaled; chroma passes the co-located luma choice here.
PredBlock predict_with_source(const ReferenceSamples& refs, IntraMode mode, InterpSource source,
                              const SelectorConfig& selectors, InterpKind signaled);

/// The interpolation a prediction made with `source` actually used. Per-sample
/// selection reports Nearest when any sample took the Nearest rule.
InterpKind applied_interp(const ReferenceSamples& refs, IntraMode mode, InterpSource source,
                          const SelectorConfig& selectors, InterpKind signaled, const PredBlock& pred);

}  // namespace sintra
