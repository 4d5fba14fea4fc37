#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace sintra {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when a caller violates an operation's precondition.
class UsageError : public Error {
 public:
  using Error::Error;
};

using Sample = std::uint16_t;

/// Rectangular array of unsigned samples with a fixed bit depth.
///
/// Width and height are multiples of 4 (at least 4) and every sample lies in
/// [0, 2^bit_depth - 1]. Samples are stored row-major.
class Plane {
 public:
  Plane() = default;
  Plane(int width, int height, int bit_depth, Sample fill = 0);
  Plane(int width, int height, int bit_depth, std::vector<Sample> samples);

  int width() const { return width_; }
  int height() const { return height_; }
  int bit_depth() const { return bit_depth_; }
  int max_value() const { return (1 << bit_depth_) - 1; }

  Sample at(int x, int y) const { return samples_[static_cast<std::size_t>(y) * width_ + x]; }
  Sample& at(int x, int y) { return samples_[static_cast<std::size_t>(y) * width_ + x]; }

  std::span<const Sample> row(int y) const {
    return {samples_.data() + static_cast<std::size_t>(y) * width_, static_cast<std::size_t>(width_)};
  }
  std::span<const Sample> samples() const { return samples_; }
  std::vector<Sample>& mutable_samples() { return samples_; }

  /// Checks the sample-range invariant; throws Error on violation.
  void validate() const;

  bool operator==(const Plane&) const = default;

 private:
  int width_ = 0;
  int height_ = 0;
  int bit_depth_ = 8;
  std::vector<Sample> samples_;
};

/// One (grayscale) or three (4:4:4) planes of identical geometry.
class Frame {
 public:
  Frame() = default;
  explicit Frame(std::vector<Plane> planes);
  Frame(int width, int height, int bit_depth, int plane_count, Sample fill = 0);

  int width() const { return planes_.empty() ? 0 : planes_[0].width(); }
  int height() const { return planes_.empty() ? 0 : planes_[0].height(); }
  int bit_depth() const { return planes_.empty() ? 8 : planes_[0].bit_depth(); }
  int plane_count() const { return static_cast<int>(planes_.size()); }

  const Plane& plane(int i) const { return planes_.at(static_cast<std::size_t>(i)); }
  Plane& plane(int i) { return planes_.at(static_cast<std::size_t>(i)); }
  const std::vector<Plane>& planes() const { return planes_; }

  bool operator==(const Frame&) const = default;

 private:
  std::vector<Plane> planes_;
};

/// Square block of one plane. Size is one of 4, 8, 16, 32.
struct BlockRef {
  int plane_index = 0;
  int x = 0;
  int y = 0;
  int size = 4;

  bool operator==(const BlockRef&) const = default;
};

bool is_valid_block_size(int size);

/// Copies the block's samples out of a plane (row-major, size*size).
std::vector<Sample> extract_block(const Plane& plane, const BlockRef& block);

/// Writes row-major block samples into a plane.
void store_block(Plane& plane, const BlockRef& block, std::span<const Sample> samples);

/// Rounds width and height up to multiples of n by replicating the last
/// column and row. n must be 4, 8, 16 or 32.
Frame pad_to_multiple(const Frame& frame, int n);

/// Top-left width x height region of every plane.
Frame crop(const Frame& frame, int width, int height);

std::uint64_t sse(std::span<const Sample> a, std::span<const Sample> b);
std::uint64_t sad_block(std::span<const Sample> a, std::span<const Sample> b);

/// Peak signal-to-noise ratio in dB; +infinity for identical planes.
double psnr(const Plane& a, const Plane& b);

}  // namespace sintra
