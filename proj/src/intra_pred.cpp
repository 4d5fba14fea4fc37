#include "sintra/intra_pred.hpp"

#include <algorithm>
#include <array>
#include <cstdlib>
#include <string>

namespace sintra {

namespace {

// Slopes of angular modes 2..34 in 1/32 sample units.
constexpr std::array<int, 33> kIntraPredAngle = {
    32, 26, 21, 17, 13, 9, 5, 2, 0, -2, -5, -9, -13, -17, -21, -26, -32,
    -26, -21, -17, -13, -9, -5, -2, 0, 2, 5, 9, 13, 17, 21, 26, 32};

int inverse_angle(int angle) {
  switch (angle) {
    case -2: return -4096;
    case -5: return -1638;
    case -9: return -910;
    case -13: return -630;
    case -17: return -482;
    case -21: return -390;
    case -26: return -315;
    case -32: return -256;
    default: throw UsageError("no inverse angle for slope " + std::to_string(angle));
  }
}

int log2_size(int size) {
  int l = 0;
  while ((1 << l) < size) ++l;
  return l;
}

struct Interpolated {
  int value;
  bool nearest;
};

int bilinear(int b, int c, int f) { return ((32 - f) * b + f * c + 16) >> 5; }
int nearest(int b, int c, int f) { return f < 16 ? b : c; }

PredBlock make_block(const ReferenceSamples& refs) {
  PredBlock out;
  out.size = refs.size();
  out.bit_depth = refs.bit_depth();
  const auto n = static_cast<std::size_t>(refs.size()) * refs.size();
  out.samples.assign(n, 0);
  out.nearest_used.assign(n, 0);
  return out;
}

void predict_planar(const ReferenceSamples& refs, PredBlock& out) {
  const int n = refs.size();
  const int shift = log2_size(n) + 1;
  const int top_right = refs.top(n);
  const int bottom_left = refs.left(n);
  for (int y = 0; y < n; ++y) {
    for (int x = 0; x < n; ++x) {
      const int v = (n - 1 - x) * refs.left(y) + (x + 1) * top_right + (n - 1 - y) * refs.top(x) +
                    (y + 1) * bottom_left + n;
      out.samples[static_cast<std::size_t>(y) * n + x] = static_cast<Sample>(v >> shift);
    }
  }
}

void predict_dc(const ReferenceSamples& refs, PredBlock& out) {
  const int n = refs.size();
  int sum = n;
  for (int i = 0; i < n; ++i) sum += refs.left(i) + refs.top(i);
  std::fill(out.samples.begin(), out.samples.end(), static_cast<Sample>(sum >> (log2_size(n) + 1)));
}

// Chooser is called at fractional positions only as chooser(B, C, f, index)
// and returns the predicted value plus whether the Nearest rule was used.
template <class Chooser>
PredBlock predict_with(const ReferenceSamples& refs, IntraMode mode, Chooser&& chooser) {
  PredBlock out = make_block(refs);
  if (mode.index() == IntraMode::kPlanar) {
    predict_planar(refs, out);
    return out;
  }
  if (mode.index() == IntraMode::kDc) {
    predict_dc(refs, out);
    return out;
  }

  const int n = refs.size();
  const int angle = mode.angle();
  const bool horizontal = mode.is_horizontal_family();
  auto main_at = [&](int i) { return horizontal ? refs.left(i) : refs.top(i); };
  auto side_at = [&](int i) { return i == 0 ? refs.corner() : (horizontal ? refs.top(i - 1) : refs.left(i - 1)); };

  // ref[k] for k in [-n, 2n]; ref[0] is the corner.
  std::array<int, 3 * 32 + 1> buffer{};
  int* ref = buffer.data() + n;
  ref[0] = refs.corner();
  for (int k = 1; k <= 2 * n; ++k) ref[k] = main_at(k - 1);
  if (angle < 0) {
    const int last = (n * angle) >> 5;
    if (last < -1) {
      const int inv = inverse_angle(angle);
      for (int k = last; k <= -1; ++k) ref[k] = side_at((k * inv + 128) >> 8);
    }
  }

  for (int row = 0; row < n; ++row) {
    const int pos = (row + 1) * angle;
    const int idx = pos >> 5;
    const int f = pos & 31;
    for (int col = 0; col < n; ++col) {
      const int x = horizontal ? row : col;
      const int y = horizontal ? col : row;
      const auto index = static_cast<std::size_t>(y) * n + x;
      const int b = ref[col + idx + 1];
      if (f == 0) {
        out.samples[index] = static_cast<Sample>(b);
        continue;
      }
      const Interpolated v = chooser(b, ref[col + idx + 2], f, index);
      out.samples[index] = static_cast<Sample>(v.value);
      out.nearest_used[index] = v.nearest ? 1 : 0;
    }
  }
  return out;
}

}  // namespace

IntraMode::IntraMode(int index) : index_(index) {
  if (index < 0 || index >= kCount) throw UsageError("intra mode out of range: " + std::to_string(index));
}

int IntraMode::angle() const { return is_angular() ? kIntraPredAngle[static_cast<std::size_t>(index_ - 2)] : 0; }

std::string_view to_string(InterpKind kind) { return kind == InterpKind::Nearest ? "nearest" : "bilinear"; }

std::optional<InterpKind> parse_interp_kind(std::string_view name) {
  if (name == "bilinear") return InterpKind::Bilinear;
  if (name == "nearest") return InterpKind::Nearest;
  return std::nullopt;
}

bool is_integer_slope(IntraMode mode) {
  switch (mode.index()) {
    case 0: case 1: case 2: case 10: case 18: case 26: case 34: return true;
    default: return false;
  }
}

ReferenceSamples::ReferenceSamples(int size, int bit_depth)
    : size_(size),
      bit_depth_(bit_depth),
      entries_(static_cast<std::size_t>(4 * size + 1), 0),
      available_(static_cast<std::size_t>(4 * size + 1), 0) {
  if (!is_valid_block_size(size)) throw UsageError("invalid block size " + std::to_string(size));
}

void ReferenceSamples::substitute() {
  const auto first = std::find(available_.begin(), available_.end(), 1);
  if (first == available_.end()) {
    std::fill(entries_.begin(), entries_.end(), static_cast<Sample>(1 << (bit_depth_ - 1)));
    return;
  }
  if (!available_[0]) entries_[0] = entries_[static_cast<std::size_t>(first - available_.begin())];
  for (std::size_t i = 1; i < entries_.size(); ++i) {
    if (!available_[i]) entries_[i] = entries_[i - 1];
  }
}

bool is_causally_available(int plane_width, int plane_height, const BlockRef& block, int x, int y) {
  if (x < 0 || y < 0 || x >= plane_width || y >= plane_height) return false;
  const int ctus_per_row = (plane_width + 31) / 32;
  auto order = [ctus_per_row](int px, int py) {
    const int ux = px >> 2;
    const int uy = py >> 2;
    int morton = 0;
    for (int b = 0; b < 3; ++b) {
      morton |= ((ux >> b) & 1) << (2 * b);
      morton |= ((uy >> b) & 1) << (2 * b + 1);
    }
    return ((uy >> 3) * ctus_per_row + (ux >> 3)) * 64 + morton;
  };
  return order(x, y) < order(block.x, block.y);
}

ReferenceSamples build_reference_samples(const Plane& recon, const BlockRef& block) {
  ReferenceSamples refs(block.size, recon.bit_depth());
  auto entries = refs.entries();
  auto available = refs.available();
  const int n = block.size;
  auto fetch = [&](std::size_t index, int x, int y) {
    if (is_causally_available(recon.width(), recon.height(), block, x, y)) {
      entries[index] = recon.at(x, y);
      available[index] = 1;
    }
  };
  for (int i = 0; i < 2 * n; ++i) fetch(static_cast<std::size_t>(2 * n - 1 - i), block.x - 1, block.y + i);
  fetch(static_cast<std::size_t>(2 * n), block.x - 1, block.y - 1);
  for (int i = 0; i < 2 * n; ++i) fetch(static_cast<std::size_t>(2 * n + 1 + i), block.x + i, block.y - 1);
  refs.substitute();
  return refs;
}

int PredBlock::nearest_count() const {
  return static_cast<int>(std::count(nearest_used.begin(), nearest_used.end(), 1));
}

PredBlock predict(const ReferenceSamples& refs, IntraMode mode, InterpKind interp) {
  if (interp == InterpKind::Nearest) {
    return predict_with(refs, mode, [](int b, int c, int f, std::size_t) {
      return Interpolated{nearest(b, c, f), true};
    });
  }
  return predict_with(refs, mode, [](int b, int c, int f, std::size_t) {
    return Interpolated{bilinear(b, c, f), false};
  });
}

PredBlock predict_adaptive(const ReferenceSamples& refs, IntraMode mode, int threshold) {
  if (threshold <= 0) throw UsageError("pixel-difference threshold must be positive");
  return predict_with(refs, mode, [threshold](int b, int c, int f, std::size_t) {
    if (std::abs(b - c) >= threshold) return Interpolated{nearest(b, c, f), true};
    return Interpolated{bilinear(b, c, f), false};
  });
}

PredBlock predict_masked(const ReferenceSamples& refs, IntraMode mode, std::span<const std::uint8_t> nearest_mask) {
  const auto n = static_cast<std::size_t>(refs.size()) * refs.size();
  if (nearest_mask.size() != n) throw UsageError("nearest mask size does not match block");
  return predict_with(refs, mode, [nearest_mask](int b, int c, int f, std::size_t index) {
    if (nearest_mask[index]) return Interpolated{nearest(b, c, f), true};
    return Interpolated{bilinear(b, c, f), false};
  });
}

std::optional<IntraMode> nn_merge_target(IntraMode mode, int size) {
  if (size != 4) return std::nullopt;
  switch (mode.index()) {
    case 9: case 11: return IntraMode(IntraMode::kHorizontal);
    case 25: case 27: return IntraMode(IntraMode::kVertical);
    default: return std::nullopt;
  }
}

}  // namespace sintra
