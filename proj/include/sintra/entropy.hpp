#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "sintra/core.hpp"

namespace sintra {

/// Raised when the arithmetic decoder runs past the end of its payload.
class BitstreamUnderrun : public Error {
 public:
  using Error::Error;
};

/// Adaptive probability of a binary symbol being 1, scaled to 15 bits.
struct BinContext {
  static constexpr int kBits = 15;
  static constexpr std::uint16_t kOne = 1 << kBits;
  static constexpr int kRate = 5;

  std::uint16_t p1 = kOne / 2;

  void update(int bin) {
    if (bin) {
      p1 = static_cast<std::uint16_t>(p1 + ((kOne - p1) >> kRate));
    } else {
      p1 = static_cast<std::uint16_t>(p1 - (p1 >> kRate));
    }
  }

  bool operator==(const BinContext&) const = default;
};

/// Cost of coding `bin` in `ctx`, in 1/32768 bit units (-log2 p scaled).
std::uint32_t bin_cost(const BinContext& ctx, int bin);
inline constexpr std::uint32_t kBypassCost = 1u << 15;
inline constexpr double kCostScale = 1.0 / (1u << 15);

/// Binary range encoder with carry propagation (32-bit range, 64-bit low).
class ArithmeticEncoder {
 public:
  void encode(int bin, BinContext& ctx);
  void encode_bypass(int bin);
  void encode_bypass_bits(std::uint32_t value, int count);

  /// Flushes the coder; the encoder must not be used afterwards.
  std::vector<std::uint8_t> finish();

  std::size_t bins_coded() const { return bins_; }

 private:
  void shift_low();

  std::uint64_t low_ = 0;
  std::uint32_t range_ = 0xFFFFFFFFu;
  std::uint8_t cache_ = 0;
  std::uint64_t cache_size_ = 1;
  std::size_t bins_ = 0;
  std::vector<std::uint8_t> out_;
};

class ArithmeticDecoder {
 public:
  explicit ArithmeticDecoder(std::span<const std::uint8_t> payload);

  int decode(BinContext& ctx);
  int decode_bypass();
  std::uint32_t decode_bypass_bits(int count);

  /// Bytes consumed so far.
  std::size_t position() const { return pos_; }

 private:
  std::uint8_t next_byte();

  std::span<const std::uint8_t> data_;
  std::size_t pos_ = 0;
  std::uint32_t range_ = 0xFFFFFFFFu;
  std::uint32_t code_ = 0;
};

/// Mirrors ArithmeticEncoder's interface but only accumulates fractional
/// bit costs, updating contexts exactly as the real coder would.
class RateEstimator {
 public:
  void encode(int bin, BinContext& ctx) {
    cost_ += bin_cost(ctx, bin);
    ctx.update(bin);
  }
  void encode_bypass(int) { cost_ += kBypassCost; }
  void encode_bypass_bits(std::uint32_t, int count) { cost_ += kBypassCost * static_cast<std::uint64_t>(count); }

  std::uint64_t cost() const { return cost_; }
  double bits() const { return static_cast<double>(cost_) * kCostScale; }

 private:
  std::uint64_t cost_ = 0;
};

/// Interpolation flag of a neighbouring block; nullopt when unavailable.
using NeighbourFlag = std::optional<int>;

/// Context index for the interpolation flag: flag_up + flag_left, with
/// unavailable neighbours counting as 0.
int interp_context_index(NeighbourFlag flag_up, NeighbourFlag flag_left);

/// Every adaptive context the codec uses. Copying it snapshots coder state.
struct ContextSet {
  static constexpr int kPositionClasses = 4;

  std::array<BinContext, 3> split{};
  BinContext is_angular{};
  BinContext chroma_derived{};
  std::array<BinContext, 3> interp_flag{};
  std::array<BinContext, 2> cbf{};
  // [luma/chroma][4x4 / larger][position class]
  std::array<std::array<std::array<BinContext, kPositionClasses>, 2>, 2> sig{};
  std::array<std::array<std::array<BinContext, kPositionClasses>, 2>, 2> gt1{};

  bool operator==(const ContextSet&) const = default;
};

}  // namespace sintra
