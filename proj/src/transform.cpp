#include "sintra/transform.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <map>

#include "sintra/core.hpp"

namespace sintra {

namespace {

// |64 * sqrt(2) * cos(pi * j / 64)| as rounded in the HEVC core transform.
constexpr std::array<int, 33> kCosine = {
    64, 90, 90, 90, 89, 88, 87, 85, 83, 82, 80, 78, 75, 73, 70, 67, 64,
    61, 57, 54, 50, 46, 43, 38, 36, 31, 25, 22, 18, 13, 9, 4, 0};

constexpr std::array<int, 6> kQuantScale = {26214, 23302, 20560, 18396, 16384, 14564};
constexpr std::array<int, 6> kDequantScale = {40, 45, 51, 57, 64, 72};

int log2_size(int size) {
  switch (size) {
    case 4: return 2;
    case 8: return 3;
    case 16: return 4;
    case 32: return 5;
    default: throw UsageError("transform size must be 4, 8, 16 or 32");
  }
}

int cosine_at(int j) {
  j %= 128;
  if (j <= 32) return kCosine[static_cast<std::size_t>(j)];
  if (j <= 64) return -kCosine[static_cast<std::size_t>(64 - j)];
  if (j <= 96) return -kCosine[static_cast<std::size_t>(j - 64)];
  return kCosine[static_cast<std::size_t>(128 - j)];
}

std::int32_t clip16(std::int64_t v) { return static_cast<std::int32_t>(std::clamp<std::int64_t>(v, -32768, 32767)); }

std::int64_t round_shift(std::int64_t v, int shift) { return shift > 0 ? (v + (std::int64_t{1} << (shift - 1))) >> shift : v; }

// Row-major N x N matrices for N = 4, 8, 16, 32.
const std::vector<int>& matrix(int size);

void check_length(std::size_t length, int size) {
  if (length != static_cast<std::size_t>(size) * size) throw UsageError("block length does not match transform size");
}

}  // namespace

double quant_step(int qp) { return std::pow(2.0, (qp - 4) / 6.0); }

int dct_coefficient(int size, int k, int n) {
  const int row = k * (32 >> log2_size(size));
  return row == 0 ? 64 : cosine_at((2 * n + 1) * row);
}

namespace {

const std::vector<int>& matrix(int size) {
  static const auto tables = [] {
    std::array<std::vector<int>, 4> t;
    for (int l = 2; l <= 5; ++l) {
      const int n = 1 << l;
      auto& m = t[static_cast<std::size_t>(l - 2)];
      m.resize(static_cast<std::size_t>(n) * n);
      for (int k = 0; k < n; ++k) {
        for (int i = 0; i < n; ++i) m[static_cast<std::size_t>(k * n + i)] = dct_coefficient(n, k, i);
      }
    }
    return t;
  }();
  return tables[static_cast<std::size_t>(log2_size(size) - 2)];
}

}  // namespace

std::vector<std::int32_t> forward_transform(std::span<const std::int32_t> residual, int size, int bit_depth) {
  check_length(residual.size(), size);
  const int n = size;
  const auto& t = matrix(n);
  const int shift1 = log2_size(n) + bit_depth - 9;
  const int shift2 = log2_size(n) + 6;
  std::vector<std::int64_t> tmp(residual.size());
  for (int y = 0; y < n; ++y) {
    for (int k = 0; k < n; ++k) {
      std::int64_t acc = 0;
      for (int x = 0; x < n; ++x) acc += std::int64_t{t[static_cast<std::size_t>(k * n + x)]} * residual[static_cast<std::size_t>(y * n + x)];
      tmp[static_cast<std::size_t>(y * n + k)] = round_shift(acc, shift1);
    }
  }
  std::vector<std::int32_t> out(residual.size());
  for (int k = 0; k < n; ++k) {
    for (int l = 0; l < n; ++l) {
      std::int64_t acc = 0;
      for (int y = 0; y < n; ++y) acc += t[static_cast<std::size_t>(k * n + y)] * tmp[static_cast<std::size_t>(y * n + l)];
      out[static_cast<std::size_t>(k * n + l)] = static_cast<std::int32_t>(round_shift(acc, shift2));
    }
  }
  return out;
}

std::vector<std::int32_t> inverse_transform(std::span<const std::int32_t> coefficients, int size, int bit_depth) {
  check_length(coefficients.size(), size);
  const int n = size;
  const auto& t = matrix(n);
  const int shift2 = 20 - bit_depth;
  std::vector<std::int32_t> tmp(coefficients.size());
  for (int y = 0; y < n; ++y) {
    for (int l = 0; l < n; ++l) {
      std::int64_t acc = 0;
      for (int k = 0; k < n; ++k) acc += std::int64_t{t[static_cast<std::size_t>(k * n + y)]} * coefficients[static_cast<std::size_t>(k * n + l)];
      tmp[static_cast<std::size_t>(y * n + l)] = clip16(round_shift(acc, 7));
    }
  }
  std::vector<std::int32_t> out(coefficients.size());
  for (int y = 0; y < n; ++y) {
    for (int x = 0; x < n; ++x) {
      std::int64_t acc = 0;
      for (int k = 0; k < n; ++k) acc += std::int64_t{t[static_cast<std::size_t>(k * n + x)]} * tmp[static_cast<std::size_t>(y * n + k)];
      out[static_cast<std::size_t>(y * n + x)] = static_cast<std::int32_t>(round_shift(acc, shift2));
    }
  }
  return out;
}

std::vector<std::int32_t> transform_quant(std::span<const std::int32_t> residual, int size, const QuantParams& qp) {
  check_length(residual.size(), size);
  if (qp.lossless) return {residual.begin(), residual.end()};
  if (qp.qp < 0 || qp.qp > 51) throw UsageError("qp out of range");
  const auto coeffs = forward_transform(residual, size, qp.bit_depth);
  const int transform_shift = 15 - qp.bit_depth - log2_size(size);
  const int qbits = 14 + qp.qp / 6 + transform_shift;
  const std::int64_t scale = kQuantScale[static_cast<std::size_t>(qp.qp % 6)];
  const std::int64_t offset = std::int64_t{171} << (qbits - 9);
  std::vector<std::int32_t> levels(coeffs.size());
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    const std::int64_t mag = (std::llabs(coeffs[i]) * scale + offset) >> qbits;
    levels[i] = static_cast<std::int32_t>(std::clamp<std::int64_t>(coeffs[i] < 0 ? -mag : mag, -32767, 32767));
  }
  return levels;
}

std::vector<std::int32_t> dequant_inverse(std::span<const std::int32_t> levels, int size, const QuantParams& qp) {
  check_length(levels.size(), size);
  if (qp.lossless) return {levels.begin(), levels.end()};
  const int transform_shift = 15 - qp.bit_depth - log2_size(size);
  const int right_shift = 6 - transform_shift;
  const std::int64_t scale = std::int64_t{kDequantScale[static_cast<std::size_t>(qp.qp % 6)]} << (qp.qp / 6);
  std::vector<std::int32_t> coeffs(levels.size());
  for (std::size_t i = 0; i < levels.size(); ++i) coeffs[i] = clip16(round_shift(levels[i] * scale, right_shift));
  return inverse_transform(coeffs, size, qp.bit_depth);
}

const std::vector<int>& zigzag_scan(int size) {
  static const auto scans = [] {
    std::map<int, std::vector<int>> out;
    for (int n : {4, 8, 16, 32}) {
      std::vector<int> order;
      for (int d = 0; d < 2 * n - 1; ++d) {
        for (int i = 0; i <= d; ++i) {
          const int y = d % 2 == 0 ? d - i : i;
          const int x = d - y;
          if (x < n && y < n) order.push_back(y * n + x);
        }
      }
      out[n] = std::move(order);
    }
    return out;
  }();
  const auto it = scans.find(size);
  if (it == scans.end()) throw UsageError("no scan for block size");
  return it->second;
}

}  // namespace sintra
