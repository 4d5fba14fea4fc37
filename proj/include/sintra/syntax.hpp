#pragma once

#include <cstdint>
#include <cstdlib>
#include <span>
#include <vector>

#include "sintra/entropy.hpp"
#include "sintra/intra_pred.hpp"
#include "sintra/transform.hpp"

namespace sintra {

/// Raised by the parsers on values no encoder can produce.
class SyntaxError : public Error {
 public:
  using Error::Error;
};

// Block-level syntax shared by the encoder, the rate estimator and the
// decoder. Writers are templates over a sink with encode / encode_bypass /
// encode_bypass_bits (ArithmeticEncoder or RateEstimator).

inline constexpr int kChromaDerived = 4;

/// Chroma mode for chroma index 0..3 (Planar, Vertical, Horizontal, DC); a
/// candidate equal to the luma mode is replaced by mode 34.
IntraMode chroma_mode_for(int chroma_index, IntraMode luma_mode);

inline int position_class(int scan_index) {
  if (scan_index == 0) return 0;
  if (scan_index < 3) return 1;
  if (scan_index < 10) return 2;
  return 3;
}

template <class Sink>
void write_exp_golomb(Sink& sink, std::uint32_t value, int k) {
  while (value >= (1u << k)) {
    sink.encode_bypass(1);
    value -= 1u << k;
    ++k;
  }
  sink.encode_bypass(0);
  sink.encode_bypass_bits(value, k);
}

template <class Sink>
void write_split_flag(Sink& sink, ContextSet& ctx, int ctx_index, bool split) {
  sink.encode(split ? 1 : 0, ctx.split[static_cast<std::size_t>(ctx_index)]);
}

/// One context-coded "is angular" bin, then Planar/DC in one bypass bin or
/// the angular mode as a truncated binary code over 33 values (5 or 6 bins).
template <class Sink>
void write_luma_mode(Sink& sink, ContextSet& ctx, IntraMode mode) {
  sink.encode(mode.is_angular() ? 1 : 0, ctx.is_angular);
  if (!mode.is_angular()) {
    sink.encode_bypass(mode.index());
    return;
  }
  const auto v = static_cast<std::uint32_t>(mode.index() - 2);
  constexpr std::uint32_t kShort = 31;  // 2^6 - 33
  if (v < kShort) {
    sink.encode_bypass_bits(v, 5);
  } else {
    sink.encode_bypass_bits(v + kShort, 6);
  }
}

template <class Sink>
void write_interp_flag(Sink& sink, ContextSet& ctx, int ctx_index, InterpKind interp) {
  sink.encode(interp == InterpKind::Nearest ? 1 : 0, ctx.interp_flag[static_cast<std::size_t>(ctx_index)]);
}

template <class Sink>
void write_chroma_mode(Sink& sink, ContextSet& ctx, int chroma_index) {
  sink.encode(chroma_index == kChromaDerived ? 1 : 0, ctx.chroma_derived);
  if (chroma_index != kChromaDerived) sink.encode_bypass_bits(static_cast<std::uint32_t>(chroma_index), 2);
}

/// Lossy: coded-block flag, last position (Exp-Golomb), then significance,
/// greater-than-one, remainder and sign per coefficient in reverse zig-zag.
/// Lossless: coded-block flag, then every residual sample as a signed
/// order-1 Exp-Golomb code in bypass bins.
template <class Sink>
void write_residual(Sink& sink, ContextSet& ctx, std::span<const std::int32_t> levels, int size, bool chroma,
                    bool lossless) {
  const auto type = static_cast<std::size_t>(chroma ? 1 : 0);
  int last = -1;
  const auto& scan = zigzag_scan(size);
  for (int i = 0; i < static_cast<int>(scan.size()); ++i) {
    if (levels[static_cast<std::size_t>(scan[static_cast<std::size_t>(i)])] != 0) last = i;
  }
  sink.encode(last >= 0 ? 1 : 0, ctx.cbf[type]);
  if (last < 0) return;

  if (lossless) {
    for (std::int32_t v : levels) {
      const auto mapped = static_cast<std::uint32_t>(v > 0 ? 2 * v - 1 : -2 * v);
      write_exp_golomb(sink, mapped, 1);
    }
    return;
  }

  const auto size_class = static_cast<std::size_t>(size > 4 ? 1 : 0);
  write_exp_golomb(sink, static_cast<std::uint32_t>(last), 0);
  for (int i = last; i >= 0; --i) {
    const std::int32_t level = levels[static_cast<std::size_t>(scan[static_cast<std::size_t>(i)])];
    const auto cls = static_cast<std::size_t>(position_class(i));
    if (i < last) sink.encode(level != 0 ? 1 : 0, ctx.sig[type][size_class][cls]);
    if (level == 0) continue;
    const auto mag = static_cast<std::uint32_t>(std::abs(level));
    sink.encode(mag > 1 ? 1 : 0, ctx.gt1[type][size_class][cls]);
    if (mag > 1) write_exp_golomb(sink, mag - 2, 0);
    sink.encode_bypass(level < 0 ? 1 : 0);
  }
}

bool read_split_flag(ArithmeticDecoder& dec, ContextSet& ctx, int ctx_index);
IntraMode read_luma_mode(ArithmeticDecoder& dec, ContextSet& ctx);
InterpKind read_interp_flag(ArithmeticDecoder& dec, ContextSet& ctx, int ctx_index);
int read_chroma_mode(ArithmeticDecoder& dec, ContextSet& ctx);
std::vector<std::int32_t> read_residual(ArithmeticDecoder& dec, ContextSet& ctx, int size, bool chroma, bool lossless);

}  // namespace sintra
