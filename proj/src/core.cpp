#include "sintra/core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace sintra {

namespace {

void check_geometry(int width, int height, int bit_depth) {
  if (width < 4 || height < 4 || width % 4 != 0 || height % 4 != 0) {
    throw Error("plane dimensions must be multiples of 4 and at least 4, got " +
                std::to_string(width) + "x" + std::to_string(height));
  }
  if (bit_depth != 8 && bit_depth != 10) {
    throw Error("unsupported bit depth " + std::to_string(bit_depth));
  }
}

void check_same_size(std::span<const Sample> a, std::span<const Sample> b) {
  if (a.size() != b.size()) throw UsageError("block dimension mismatch");
}

}  // namespace

Plane::Plane(int width, int height, int bit_depth, Sample fill)
    : width_(width), height_(height), bit_depth_(bit_depth) {
  check_geometry(width, height, bit_depth);
  if (fill > max_value()) throw Error("fill value out of range");
  samples_.assign(static_cast<std::size_t>(width) * height, fill);
}

Plane::Plane(int width, int height, int bit_depth, std::vector<Sample> samples)
    : width_(width), height_(height), bit_depth_(bit_depth), samples_(std::move(samples)) {
  check_geometry(width, height, bit_depth);
  if (samples_.size() != static_cast<std::size_t>(width) * height) {
    throw Error("sample count does not match plane dimensions");
  }
  validate();
}

void Plane::validate() const {
  const int max = max_value();
  for (Sample s : samples_) {
    if (s > max) throw Error("sample value " + std::to_string(s) + " exceeds bit depth");
  }
}

Frame::Frame(std::vector<Plane> planes) : planes_(std::move(planes)) {
  if (planes_.size() != 1 && planes_.size() != 3) throw Error("a frame holds 1 or 3 planes");
  for (const Plane& p : planes_) {
    if (p.width() != planes_[0].width() || p.height() != planes_[0].height() ||
        p.bit_depth() != planes_[0].bit_depth()) {
      throw Error("frame planes must share dimensions and bit depth");
    }
  }
}

Frame::Frame(int width, int height, int bit_depth, int plane_count, Sample fill) {
  if (plane_count != 1 && plane_count != 3) throw Error("a frame holds 1 or 3 planes");
  planes_.assign(static_cast<std::size_t>(plane_count), Plane(width, height, bit_depth, fill));
}

bool is_valid_block_size(int size) { return size == 4 || size == 8 || size == 16 || size == 32; }

std::vector<Sample> extract_block(const Plane& plane, const BlockRef& block) {
  std::vector<Sample> out(static_cast<std::size_t>(block.size) * block.size);
  for (int y = 0; y < block.size; ++y) {
    const auto row = plane.row(block.y + y);
    std::copy_n(row.begin() + block.x, block.size, out.begin() + static_cast<std::ptrdiff_t>(y) * block.size);
  }
  return out;
}

void store_block(Plane& plane, const BlockRef& block, std::span<const Sample> samples) {
  for (int y = 0; y < block.size; ++y) {
    for (int x = 0; x < block.size; ++x) {
      plane.at(block.x + x, block.y + y) = samples[static_cast<std::size_t>(y) * block.size + x];
    }
  }
}

Frame pad_to_multiple(const Frame& frame, int n) {
  if (!is_valid_block_size(n)) throw UsageError("padding multiple must be 4, 8, 16 or 32");
  const int w = frame.width();
  const int h = frame.height();
  const int pw = (w + n - 1) / n * n;
  const int ph = (h + n - 1) / n * n;
  if (pw == w && ph == h) return frame;

  std::vector<Plane> planes;
  for (const Plane& src : frame.planes()) {
    Plane dst(pw, ph, src.bit_depth());
    for (int y = 0; y < ph; ++y) {
      const int sy = std::min(y, h - 1);
      for (int x = 0; x < pw; ++x) dst.at(x, y) = src.at(std::min(x, w - 1), sy);
    }
    planes.push_back(std::move(dst));
  }
  return Frame(std::move(planes));
}

Frame crop(const Frame& frame, int width, int height) {
  if (width > frame.width() || height > frame.height()) throw UsageError("crop exceeds frame");
  if (width == frame.width() && height == frame.height()) return frame;
  std::vector<Plane> planes;
  for (const Plane& src : frame.planes()) {
    Plane dst(width, height, src.bit_depth());
    for (int y = 0; y < height; ++y) {
      for (int x = 0; x < width; ++x) dst.at(x, y) = src.at(x, y);
    }
    planes.push_back(std::move(dst));
  }
  return Frame(std::move(planes));
}

std::uint64_t sse(std::span<const Sample> a, std::span<const Sample> b) {
  check_same_size(a, b);
  std::uint64_t sum = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const std::int64_t d = static_cast<std::int64_t>(a[i]) - b[i];
    sum += static_cast<std::uint64_t>(d * d);
  }
  return sum;
}

std::uint64_t sad_block(std::span<const Sample> a, std::span<const Sample> b) {
  check_same_size(a, b);
  std::uint64_t sum = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sum += static_cast<std::uint64_t>(a[i] > b[i] ? a[i] - b[i] : b[i] - a[i]);
  }
  return sum;
}

double psnr(const Plane& a, const Plane& b) {
  if (a.width() != b.width() || a.height() != b.height() || a.bit_depth() != b.bit_depth()) {
    throw UsageError("psnr requires planes of equal geometry and bit depth");
  }
  const std::uint64_t err = sse(a.samples(), b.samples());
  if (err == 0) return std::numeric_limits<double>::infinity();
  const double max = a.max_value();
  return 10.0 * std::log10(max * max * a.width() * a.height() / static_cast<double>(err));
}

}  // namespace sintra
