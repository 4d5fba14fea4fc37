#include "sintra/variant.hpp"

#include <array>

namespace sintra {

namespace {

constexpr std::array<std::string_view, 6> kNames = {"bilinear-only", "nn-all-blocks", "nn-4x4-only",
                                                    "sad",           "pixdiff",       "rdo"};

}  // namespace

std::string_view to_string(Variant v) { return kNames[static_cast<std::size_t>(v)]; }

std::optional<Variant> parse_variant(std::string_view name) {
  for (std::size_t i = 0; i < kNames.size(); ++i) {
    if (kNames[i] == name) return static_cast<Variant>(i);
  }
  return std::nullopt;
}

const std::vector<Variant>& all_variants() {
  static const std::vector<Variant> v = {Variant::BilinearOnly, Variant::NnAllBlocks, Variant::Nn4x4Only,
                                         Variant::Sad,          Variant::PixDiff,     Variant::Rdo};
  return v;
}

InterpSource interp_source(const CodecParams& params, int size, IntraMode mode) {
  if (!is_oblique(mode)) return InterpSource::Bilinear;
  const bool selective_size = size == 4 || !params.restrict_4x4;
  switch (params.variant) {
    case Variant::BilinearOnly: return InterpSource::Bilinear;
    case Variant::NnAllBlocks: return InterpSource::Nearest;
    case Variant::Nn4x4Only: return size == 4 ? InterpSource::Nearest : InterpSource::Bilinear;
    case Variant::Sad: return selective_size ? InterpSource::SadSelect : InterpSource::Bilinear;
    case Variant::PixDiff: return selective_size ? InterpSource::PixDiff : InterpSource::Bilinear;
    case Variant::Rdo:
      if (!selective_size || nn_merge_target(mode, size)) return InterpSource::Bilinear;
      return InterpSource::Signaled;
  }
  return InterpSource::Bilinear;
}

PredBlock predict_with_source(const ReferenceSamples& refs, IntraMode mode, InterpSource source,
                              const SelectorConfig& selectors, InterpKind signaled) {
  switch (source) {
    case InterpSource::Bilinear: return predict(refs, mode, InterpKind::Bilinear);
    case InterpSource::Nearest: return predict(refs, mode, InterpKind::Nearest);
    case InterpSource::SadSelect: return predict(refs, mode, select_by_sad(refs, mode, selectors));
    case InterpSource::PixDiff: return predict_adaptive(refs, mode, selectors.scaled_pixdiff());
    case InterpSource::Signaled: return predict(refs, mode, signaled);
  }
  return predict(refs, mode, InterpKind::Bilinear);
}

InterpKind applied_interp(const ReferenceSamples& refs, IntraMode mode, InterpSource source,
                          const SelectorConfig& selectors, InterpKind signaled, const PredBlock& pred) {
  switch (source) {
    case InterpSource::Bilinear: return InterpKind::Bilinear;
    case InterpSource::Nearest: return InterpKind::Nearest;
    case InterpSource::SadSelect: return select_by_sad(refs, mode, selectors);
    case InterpSource::PixDiff: return pred.nearest_count() > 0 ? InterpKind::Nearest : InterpKind::Bilinear;
    case InterpSource::Signaled: return signaled;
  }
  return InterpKind::Bilinear;
}

}  // namespace sintra
