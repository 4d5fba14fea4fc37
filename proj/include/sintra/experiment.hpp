#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sintra/codec.hpp"
#include "sintra/metrics.hpp"

namespace sintra {

/// A named sequence of frames coded as one stream.
struct CorpusItem {
  std::string name;
  std::vector<Frame> frames;
};

struct ExperimentConfig {
  std::vector<Variant> variants = all_variants();
  std::vector<int> qps = {22, 27, 32, 37};
  CodecParams base;  ///< thresholds, context and size options; variant and qp are overridden
  int candidate_list_size = 8;
};

/// One encode/decode of one item.
struct PointRecord {
  std::string item;
  Variant variant = Variant::BilinearOnly;
  int qp = 0;
  std::uint64_t bits = 0;
  std::uint64_t raw_bits = 0;
  std::vector<double> psnr;  ///< per component, from the MSE over all frames
  double encode_seconds = 0.0;
  double decode_seconds = 0.0;
  std::size_t flags = 0;
  std::size_t nearest_4x4 = 0;
  std::size_t total_4x4 = 0;
};

/// Per-variant comparison against the bilinear-only anchor.
struct VariantSummary {
  Variant variant = Variant::BilinearOnly;
  std::optional<double> bd_rate;            ///< luma, mean over items with a valid fit
  std::vector<std::optional<double>> bd_rate_component;
  std::size_t bd_items = 0;                 ///< items contributing to bd_rate
  std::optional<double> lossless_gain;      ///< compression gain at qp 0 over all items
  double encode_time_ratio = 0.0;
  double decode_time_ratio = 0.0;
  double hit_ratio = 0.0;
  std::size_t flags = 0;
  std::uint64_t bits = 0;
};

struct ExperimentReport {
  std::vector<PointRecord> points;
  std::vector<VariantSummary> summary;

  const VariantSummary& of(Variant v) const;

  /// Aligned plain-text tables; timings are omitted when include_timing is false.
  std::string table(bool include_timing = true) const;
  /// One JSON object per line: every point, then every summary row.
  std::string jsonl(bool include_timing = true) const;
};

/// Bits per frame and PSNR of one item and variant as a rate curve over the
/// lossy qps, for one component.
RateCurve rate_curve(const ExperimentReport& report, const std::string& item, Variant variant, int component = 0);

/// Encodes and decodes every (item, variant, qp); a decoder output that
/// differs from the encoder's reconstruction throws Error naming the tuple.
/// The anchor variant is always run.
ExperimentReport run_experiment(const std::vector<CorpusItem>& corpus, const ExperimentConfig& cfg);

}  // namespace sintra
