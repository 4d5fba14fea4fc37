#include "sintra/entropy.hpp"

#include <cmath>

namespace sintra {

namespace {

constexpr std::uint32_t kTop = 1u << 24;

// -log2(p / 2^15) * 2^15 for p = 0 .. 2^15; entry 0 is never used.
const std::array<std::uint32_t, BinContext::kOne + 1>& cost_table() {
  static const auto table = [] {
    std::array<std::uint32_t, BinContext::kOne + 1> t{};
    for (std::uint32_t p = 1; p <= BinContext::kOne; ++p) {
      t[p] = static_cast<std::uint32_t>(std::lround(-std::log2(p / double(BinContext::kOne)) * BinContext::kOne));
    }
    t[0] = t[1];
    return t;
  }();
  return table;
}

}  // namespace

std::uint32_t bin_cost(const BinContext& ctx, int bin) {
  const std::uint32_t p = bin ? ctx.p1 : BinContext::kOne - ctx.p1;
  return cost_table()[p];
}

void ArithmeticEncoder::encode(int bin, BinContext& ctx) {
  const std::uint32_t bound = (range_ >> BinContext::kBits) * ctx.p1;
  if (bin) {
    range_ = bound;
  } else {
    low_ += bound;
    range_ -= bound;
  }
  ctx.update(bin);
  ++bins_;
  while (range_ < kTop) {
    range_ <<= 8;
    shift_low();
  }
}

void ArithmeticEncoder::encode_bypass(int bin) {
  range_ >>= 1;
  if (bin) low_ += range_;
  ++bins_;
  while (range_ < kTop) {
    range_ <<= 8;
    shift_low();
  }
}

void ArithmeticEncoder::encode_bypass_bits(std::uint32_t value, int count) {
  for (int i = count - 1; i >= 0; --i) encode_bypass(static_cast<int>((value >> i) & 1u));
}

void ArithmeticEncoder::shift_low() {
  if (low_ < 0xFF000000ull || low_ >= (1ull << 32)) {
    const auto carry = static_cast<std::uint8_t>(low_ >> 32);
    std::uint8_t byte = cache_;
    do {
      out_.push_back(static_cast<std::uint8_t>(byte + carry));
      byte = 0xFF;
    } while (--cache_size_ != 0);
    cache_ = static_cast<std::uint8_t>(low_ >> 24);
  }
  ++cache_size_;
  low_ = (low_ & 0x00FFFFFFull) << 8;
}

std::vector<std::uint8_t> ArithmeticEncoder::finish() {
  for (int i = 0; i < 5; ++i) shift_low();
  return std::move(out_);
}

ArithmeticDecoder::ArithmeticDecoder(std::span<const std::uint8_t> payload) : data_(payload) {
  for (int i = 0; i < 5; ++i) code_ = (code_ << 8) | next_byte();
}

std::uint8_t ArithmeticDecoder::next_byte() {
  if (pos_ >= data_.size()) throw BitstreamUnderrun("arithmetic decoder ran past the end of the payload");
  return data_[pos_++];
}

int ArithmeticDecoder::decode(BinContext& ctx) {
  const std::uint32_t bound = (range_ >> BinContext::kBits) * ctx.p1;
  int bin;
  if (code_ < bound) {
    range_ = bound;
    bin = 1;
  } else {
    code_ -= bound;
    range_ -= bound;
    bin = 0;
  }
  ctx.update(bin);
  while (range_ < kTop) {
    range_ <<= 8;
    code_ = (code_ << 8) | next_byte();
  }
  return bin;
}

int ArithmeticDecoder::decode_bypass() {
  range_ >>= 1;
  int bin = 0;
  if (code_ >= range_) {
    code_ -= range_;
    bin = 1;
  }
  while (range_ < kTop) {
    range_ <<= 8;
    code_ = (code_ << 8) | next_byte();
  }
  return bin;
}

std::uint32_t ArithmeticDecoder::decode_bypass_bits(int count) {
  std::uint32_t v = 0;
  for (int i = 0; i < count; ++i) v = (v << 1) | static_cast<std::uint32_t>(decode_bypass());
  return v;
}

int interp_context_index(NeighbourFlag flag_up, NeighbourFlag flag_left) {
  return flag_up.value_or(0) + flag_left.value_or(0);
}

}  // namespace sintra
