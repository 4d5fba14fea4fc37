#include "sintra/syntax.hpp"

#include <array>
#include <string>

namespace sintra {

namespace {

constexpr int kMaxGolombPrefix = 20;

std::uint32_t read_exp_golomb(ArithmeticDecoder& dec, int k) {
  std::uint32_t value = 0;
  int prefix = 0;
  while (dec.decode_bypass()) {
    value += 1u << k;
    ++k;
    if (++prefix > kMaxGolombPrefix) throw SyntaxError("Exp-Golomb prefix too long");
  }
  return value + dec.decode_bypass_bits(k);
}

}  // namespace

IntraMode chroma_mode_for(int chroma_index, IntraMode luma_mode) {
  static constexpr std::array<int, 4> kCandidates = {IntraMode::kPlanar, IntraMode::kVertical,
                                                     IntraMode::kHorizontal, IntraMode::kDc};
  if (chroma_index == kChromaDerived) return luma_mode;
  if (chroma_index < 0 || chroma_index > 3) throw UsageError("chroma mode index out of range");
  const IntraMode m(kCandidates[static_cast<std::size_t>(chroma_index)]);
  return m == luma_mode ? IntraMode(34) : m;
}

bool read_split_flag(ArithmeticDecoder& dec, ContextSet& ctx, int ctx_index) {
  return dec.decode(ctx.split[static_cast<std::size_t>(ctx_index)]) != 0;
}

IntraMode read_luma_mode(ArithmeticDecoder& dec, ContextSet& ctx) {
  if (!dec.decode(ctx.is_angular)) return IntraMode(dec.decode_bypass());
  std::uint32_t v = dec.decode_bypass_bits(5);
  if (v >= 31) {
    v = ((v << 1) | static_cast<std::uint32_t>(dec.decode_bypass())) - 31;
    if (v >= 33) throw SyntaxError("angular mode code out of range");
  }
  return IntraMode(static_cast<int>(v) + 2);
}

InterpKind read_interp_flag(ArithmeticDecoder& dec, ContextSet& ctx, int ctx_index) {
  return dec.decode(ctx.interp_flag[static_cast<std::size_t>(ctx_index)]) ? InterpKind::Nearest : InterpKind::Bilinear;
}

int read_chroma_mode(ArithmeticDecoder& dec, ContextSet& ctx) {
  if (dec.decode(ctx.chroma_derived)) return kChromaDerived;
  return static_cast<int>(dec.decode_bypass_bits(2));
}

std::vector<std::int32_t> read_residual(ArithmeticDecoder& dec, ContextSet& ctx, int size, bool chroma,
                                        bool lossless) {
  const auto type = static_cast<std::size_t>(chroma ? 1 : 0);
  std::vector<std::int32_t> levels(static_cast<std::size_t>(size) * size, 0);
  if (!dec.decode(ctx.cbf[type])) return levels;

  if (lossless) {
    for (auto& v : levels) {
      const std::uint32_t mapped = read_exp_golomb(dec, 1);
      if (mapped > 1u << 17) throw SyntaxError("lossless residual out of range");
      v = (mapped & 1u) ? static_cast<std::int32_t>((mapped + 1) / 2) : -static_cast<std::int32_t>(mapped / 2);
    }
    return levels;
  }

  const auto& scan = zigzag_scan(size);
  const std::uint32_t last = read_exp_golomb(dec, 0);
  if (last >= scan.size()) throw SyntaxError("last coefficient position out of range");
  const auto size_class = static_cast<std::size_t>(size > 4 ? 1 : 0);
  for (int i = static_cast<int>(last); i >= 0; --i) {
    const auto cls = static_cast<std::size_t>(position_class(i));
    if (i < static_cast<int>(last) && !dec.decode(ctx.sig[type][size_class][cls])) continue;
    std::uint32_t mag = 1;
    if (dec.decode(ctx.gt1[type][size_class][cls])) mag = read_exp_golomb(dec, 0) + 2;
    if (mag > 32767) throw SyntaxError("coefficient level out of range");
    const bool negative = dec.decode_bypass() != 0;
    levels[static_cast<std::size_t>(scan[static_cast<std::size_t>(i)])] =
        negative ? -static_cast<std::int32_t>(mag) : static_cast<std::int32_t>(mag);
  }
  return levels;
}

}  // namespace sintra
