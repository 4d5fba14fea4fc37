#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "sintra/core.hpp"

namespace sintra {

/// One of the 35 intra prediction modes: 0 Planar, 1 DC, 2..34 angular
/// (10 horizontal, 26 vertical, 2/18/34 diagonals).
class IntraMode {
 public:
  static constexpr int kPlanar = 0;
  static constexpr int kDc = 1;
  static constexpr int kHorizontal = 10;
  static constexpr int kVertical = 26;
  static constexpr int kCount = 35;

  constexpr IntraMode() = default;
  explicit IntraMode(int index);

  constexpr int index() const { return index_; }
  constexpr bool is_angular() const { return index_ >= 2; }

  /// Angular modes 2..17 project onto the left column.
  constexpr bool is_horizontal_family() const { return index_ >= 2 && index_ < 18; }

  /// Projection slope in 1/32 sample units; 0 for Planar and DC.
  int angle() const;

  constexpr auto operator<=>(const IntraMode&) const = default;

 private:
  int index_ = 0;
};

enum class InterpKind : std::uint8_t { Bilinear = 0, Nearest = 1 };

std::string_view to_string(InterpKind kind);
std::optional<InterpKind> parse_interp_kind(std::string_view name);

/// True for modes that only read integer reference positions:
/// Planar, DC, and angular modes 2, 10, 18, 26, 34.
bool is_integer_slope(IntraMode mode);

/// Oblique angular modes are the ones whose interpolation kind matters.
inline bool is_oblique(IntraMode mode) { return !is_integer_slope(mode); }

/// The 4N+1 boundary samples of an N x N block.
///
/// Entries are kept in substitution scan order: index 0 is the bottom-most
/// left sample (y = 2N-1), index 2N-1 the left sample adjacent to the corner,
/// index 2N the corner, and 2N+1 .. 4N the top row from x = 0 to x = 2N-1.
/// For N = 4 the corner is sample A, top[0..7] are B..I and left[0..7] J..Q.
class ReferenceSamples {
 public:
  ReferenceSamples(int size, int bit_depth);

  int size() const { return size_; }
  int bit_depth() const { return bit_depth_; }
  int count() const { return 4 * size_ + 1; }

  /// Left column, i = 0 is the sample beside the block's top row.
  Sample left(int i) const { return entries_[static_cast<std::size_t>(2 * size_ - 1 - i)]; }
  Sample corner() const { return entries_[static_cast<std::size_t>(2 * size_)]; }
  /// Top row, i = 0 is the sample above the block's left column.
  Sample top(int i) const { return entries_[static_cast<std::size_t>(2 * size_ + 1 + i)]; }

  void set_left(int i, Sample v) { entries_[static_cast<std::size_t>(2 * size_ - 1 - i)] = v; }
  void set_corner(Sample v) { entries_[static_cast<std::size_t>(2 * size_)] = v; }
  void set_top(int i, Sample v) { entries_[static_cast<std::size_t>(2 * size_ + 1 + i)] = v; }

  std::span<const Sample> entries() const { return entries_; }
  std::span<Sample> entries() { return entries_; }

  /// Availability before substitution, same indexing as entries().
  std::span<const std::uint8_t> available() const { return available_; }
  std::span<std::uint8_t> available() { return available_; }

  /// Fills unavailable entries: scanning from index 0 upward, each missing
  /// entry copies its predecessor; a missing first entry copies the first
  /// available one; with none available everything becomes 2^(bit_depth-1).
  void substitute();

 private:
  int size_;
  int bit_depth_;
  std::vector<Sample> entries_;
  std::vector<std::uint8_t> available_;
};

/// Whether sample (x, y) of a plane is reconstructed before `block` when
/// coding 32x32 units in raster order and the quadtree in z-order.
bool is_causally_available(int plane_width, int plane_height, const BlockRef& block, int x, int y);

ReferenceSamples build_reference_samples(const Plane& recon, const BlockRef& block);

struct PredBlock {
  int size = 4;
  int bit_depth = 8;
  std::vector<Sample> samples;
  /// 1 where the Nearest rule produced the sample at a fractional position.
  std::vector<std::uint8_t> nearest_used;

  Sample at(int x, int y) const { return samples[static_cast<std::size_t>(y) * size + x]; }
  int nearest_count() const;
};

PredBlock predict(const ReferenceSamples& refs, IntraMode mode, InterpKind interp);

/// Per-sample selection: Nearest where |B - C| >= threshold, Bilinear otherwise.
PredBlock predict_adaptive(const ReferenceSamples& refs, IntraMode mode, int threshold);

/// Replays an explicit per-sample choice (1 = Nearest) at fractional positions.
PredBlock predict_masked(const ReferenceSamples& refs, IntraMode mode, std::span<const std::uint8_t> nearest_mask);

/// At 4x4, modes 9/11 predict like 10 and 25/27 like 26 under Nearest.
std::optional<IntraMode> nn_merge_target(IntraMode mode, int size);

}  // namespace sintra
