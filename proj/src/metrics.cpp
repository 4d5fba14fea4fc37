#include "sintra/metrics.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

namespace sintra {

namespace {

struct CubicFit {
  double center = 0.0;
  Eigen::Vector4d coef;  // ascending powers of (psnr - center)

  // Antiderivative evaluated at psnr.
  double primitive(double psnr) const {
    const double t = psnr - center;
    return coef[0] * t + coef[1] * t * t / 2 + coef[2] * t * t * t / 3 + coef[3] * t * t * t * t / 4;
  }
};

CubicFit fit_log_rate(const std::vector<RatePoint>& pts) {
  CubicFit fit;
  for (const RatePoint& p : pts) fit.center += p.psnr;
  fit.center /= static_cast<double>(pts.size());
  Eigen::MatrixXd a(pts.size(), 4);
  Eigen::VectorXd b(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const double t = pts[i].psnr - fit.center;
    const auto r = static_cast<Eigen::Index>(i);
    a(r, 0) = 1.0;
    a(r, 1) = t;
    a(r, 2) = t * t;
    a(r, 3) = t * t * t;
    b(r) = std::log(pts[i].bitrate);
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(a);
  if (qr.rank() < 4) throw MetricError("degenerate rate curve: cubic fit is rank deficient");
  fit.coef = qr.solve(b);
  return fit;
}

}  // namespace

std::vector<RatePoint> RateCurve::validated() const {
  if (points.size() < 4) throw MetricError("rate curve needs at least 4 points");
  std::vector<RatePoint> sorted = points;
  std::sort(sorted.begin(), sorted.end(), [](const RatePoint& a, const RatePoint& b) { return a.bitrate < b.bitrate; });
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (!std::isfinite(sorted[i].bitrate) || !std::isfinite(sorted[i].psnr) || sorted[i].bitrate <= 0) {
      throw MetricError("rate curve point is not finite and positive");
    }
    if (i > 0 && (sorted[i].bitrate <= sorted[i - 1].bitrate || sorted[i].psnr <= sorted[i - 1].psnr)) {
      throw MetricError("rate curve is not strictly monotone");
    }
  }
  return sorted;
}

double bd_rate(const RateCurve& anchor, const RateCurve& test) {
  const auto a = anchor.validated();
  const auto t = test.validated();
  const double lo = std::max(a.front().psnr, t.front().psnr);
  const double hi = std::min(a.back().psnr, t.back().psnr);
  if (!(hi > lo)) throw MetricError("rate curves do not overlap in PSNR");
  const CubicFit fa = fit_log_rate(a);
  const CubicFit ft = fit_log_rate(t);
  const double ia = fa.primitive(hi) - fa.primitive(lo);
  const double it = ft.primitive(hi) - ft.primitive(lo);
  return 100.0 * (std::exp((it - ia) / (hi - lo)) - 1.0);
}

double compression_gain(double cr_proposed, double cr_anchor) {
  if (!(cr_proposed > 0) || !(cr_anchor > 0)) throw UsageError("compression ratios must be positive");
  return 100.0 * (cr_proposed - cr_anchor) / cr_anchor;
}

double time_ratio(double proposed_seconds, double anchor_seconds) {
  if (!(anchor_seconds > 0)) throw UsageError("anchor time must be positive");
  if (proposed_seconds < 0) throw UsageError("time must be non-negative");
  return 100.0 * proposed_seconds / anchor_seconds;
}

HitMap hit_ratio_map(std::span<const ModeDecision> decisions, int width, int height) {
  HitMap out;
  out.mask = Plane(width, height, 8, 0);
  const int cols = width / 4;
  const int rows = height / 4;
  std::vector<std::uint8_t> covered(static_cast<std::size_t>(cols * rows), 0);
  const int padded_w = (width + 31) / 32 * 32;
  const int padded_h = (height + 31) / 32 * 32;
  for (const ModeDecision& d : decisions) {
    if (d.block.plane_index != 0) continue;
    const BlockRef& b = d.block;
    if (!is_valid_block_size(b.size) || b.x < 0 || b.y < 0 || b.x % b.size || b.y % b.size ||
        b.x + b.size > padded_w || b.y + b.size > padded_h) {
      throw UsageError("decision log does not match the frame dimensions");
    }
    const bool nearest = d.interp == InterpKind::Nearest;
    if (b.size == 4 && b.x < width && b.y < height) {
      ++out.total_blocks;
      if (nearest) ++out.nearest_blocks;
    }
    for (int uy = b.y / 4; uy < std::min(rows, (b.y + b.size) / 4); ++uy) {
      for (int ux = b.x / 4; ux < std::min(cols, (b.x + b.size) / 4); ++ux) {
        auto& c = covered[static_cast<std::size_t>(uy * cols + ux)];
        if (c) throw UsageError("decision log covers a block twice");
        c = 1;
        if (b.size == 4 && nearest) {
          for (int y = 0; y < 4; ++y) {
            for (int x = 0; x < 4; ++x) out.mask.at(ux * 4 + x, uy * 4 + y) = 255;
          }
        }
      }
    }
  }
  if (std::find(covered.begin(), covered.end(), 0) != covered.end()) {
    throw UsageError("decision log does not cover the frame");
  }
  return out;
}

}  // namespace sintra
