#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "sintra/core.hpp"

namespace sintra {

/// Synthetic content families.
///   TextLike          two-level rectangles and 1-px strokes on a flat background
///   TwoToneDiagonals  16x16 tiles, each two values split by edges at a mode angle
///   Ramps             smooth gradients with mild noise (camera-like)
///   Mixed             left half screen content, right half ramps
enum class ContentStyle : std::uint8_t { TextLike, TwoToneDiagonals, Ramps, Mixed };

std::string_view to_string(ContentStyle s);
std::optional<ContentStyle> parse_content_style(std::string_view name);

inline constexpr int kDiagonalTileSize = 16;

struct ContentSpec {
  int width = 64;
  int height = 64;
  std::uint64_t seed = 1;
  ContentStyle style = ContentStyle::TwoToneDiagonals;
  int planes = 1;
  int bit_depth = 8;
};

/// Deterministic for a given spec. Higher bit depths are the 8-bit content
/// shifted left.
Frame gen_screen_content(const ContentSpec& spec);

/// `count` frames with seeds spec.seed, spec.seed + 1, ...
std::vector<Frame> gen_corpus(const ContentSpec& spec, int count);

}  // namespace sintra
