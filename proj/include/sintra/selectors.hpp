#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "sintra/intra_pred.hpp"

namespace sintra {

/// Which reference samples an oblique mode can touch.
///
/// Category 1 (modes 3..9) uses the whole left column, category 2
/// (modes 11..17, 19..25) the corner with the N adjacent left and N adjacent
/// top samples, category 3 (modes 27..33) the whole top row. At 4x4 these are
/// J..Q, A..E + J..M and B..I respectively.
struct RefCategory {
  int id = 1;

  /// Indices into ReferenceSamples::entries() for a block of the given size.
  std::vector<int> members(int size) const;

  bool operator==(const RefCategory&) const = default;
};

std::optional<RefCategory> category_of(IntraMode mode);

/// Sum of absolute deviations from the mean, kept as an exact fraction:
/// value = scaled / count, where scaled = sum |count * x_i - sum x|.
struct ReferenceSad {
  std::uint64_t scaled = 0;
  std::uint32_t count = 1;

  double value() const { return static_cast<double>(scaled) / count; }
  bool at_least(std::int64_t threshold) const {
    return scaled >= static_cast<std::uint64_t>(threshold) * count;
  }
};

ReferenceSad reference_sad(const ReferenceSamples& refs, const RefCategory& category);

/// base * 2^(bit_depth - 8); bit depth must be 8, 10 or 12.
int scaled_threshold(int base, int bit_depth);

/// Thresholds are given at 8-bit scale and scaled to bit_depth on use.
struct SelectorConfig {
  int sad_threshold = 64;
  int pixdiff_threshold = 128;
  int bit_depth = 8;

  int scaled_sad() const { return scaled_threshold(sad_threshold, bit_depth); }
  int scaled_pixdiff() const { return scaled_threshold(pixdiff_threshold, bit_depth); }
};

/// Block-level choice: Nearest iff the category SAD reaches the threshold.
/// Throws UsageError for modes without a category.
InterpKind select_by_sad(const ReferenceSamples& refs, IntraMode mode, const SelectorConfig& cfg);

}  // namespace sintra
