#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace sintra {

/// Residual pipeline: integer DCT-II (the HEVC core-transform family at
/// 4/8/16/32) with uniform scalar quantization, or identity when lossless.
struct QuantParams {
  int qp = 27;
  int bit_depth = 8;
  bool lossless = false;
};

/// Quantization step in residual sample units: 2^((qp - 4) / 6).
double quant_step(int qp);

/// Entry (row k, column n) of the N-point integer DCT matrix.
int dct_coefficient(int size, int k, int n);

std::vector<std::int32_t> forward_transform(std::span<const std::int32_t> residual, int size, int bit_depth);
std::vector<std::int32_t> inverse_transform(std::span<const std::int32_t> coefficients, int size, int bit_depth);

/// Residual -> coefficient levels. Lossless returns the residual itself.
std::vector<std::int32_t> transform_quant(std::span<const std::int32_t> residual, int size, const QuantParams& qp);

/// Coefficient levels -> reconstructed residual.
std::vector<std::int32_t> dequant_inverse(std::span<const std::int32_t> levels, int size, const QuantParams& qp);

/// Zig-zag scan order for an N x N block (raster indices).
const std::vector<int>& zigzag_scan(int size);

}  // namespace sintra
