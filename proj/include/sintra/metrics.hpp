#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "sintra/core.hpp"
#include "sintra/rdo.hpp"

namespace sintra {

/// Raised for curves the Bjontegaard fit cannot handle.
class MetricError : public Error {
 public:
  using Error::Error;
};

struct RatePoint {
  double bitrate = 0.0;
  double psnr = 0.0;
};

/// Rate-distortion points of one configuration. Points may be given in any
/// order; sorted by bitrate they must be strictly increasing in both
/// coordinates, finite and positive in rate, and at least four.
struct RateCurve {
  std::vector<RatePoint> points;

  /// Sorted copy; throws MetricError when the invariants do not hold.
  std::vector<RatePoint> validated() const;
};

/// Bjontegaard delta rate in percent (negative: test needs less rate).
/// Cubic least-squares fit of ln(rate) over PSNR, integrated over the
/// common PSNR interval.
double bd_rate(const RateCurve& anchor, const RateCurve& test);

/// 100 * (cr_proposed - cr_anchor) / cr_anchor; positive means gain.
double compression_gain(double cr_proposed, double cr_anchor);

/// 100 * proposed / anchor.
double time_ratio(double proposed_seconds, double anchor_seconds);

struct HitMap {
  Plane mask;  ///< 8-bit, 255 over 4x4 luma blocks predicted with Nearest
  std::size_t nearest_blocks = 0;
  std::size_t total_blocks = 0;  ///< 4x4 luma blocks inside the frame
  double ratio() const {
    return total_blocks ? static_cast<double>(nearest_blocks) / static_cast<double>(total_blocks) : 0.0;
  }
};

/// Builds the map from one frame's decisions. Luma decisions must tile the
/// frame (padding beyond it is ignored); anything else is a mismatch.
HitMap hit_ratio_map(std::span<const ModeDecision> decisions, int width, int height);

}  // namespace sintra
