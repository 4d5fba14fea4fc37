#include "sintra/corpus.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <random>

#include "sintra/intra_pred.hpp"

namespace sintra {

namespace {

using Rng = std::mt19937_64;

constexpr std::array<std::string_view, 4> kStyleNames = {"text-like", "two-tone-diagonals", "ramps", "mixed"};

int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }
double uniform_real(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

int floor_div(int a, int b) { return a >= 0 ? a / b : -((-a + b - 1) / b); }

// Row displacement of an edge running along an angular mode, rounded the way
// the Nearest rule rounds.
int shear(int distance, int angle) { return floor_div(distance * angle + 16, 32); }

int oblique_mode(Rng& rng) {
  for (;;) {
    const int m = uniform(rng, 3, 33);
    if (is_oblique(IntraMode(m))) return m;
  }
}

// One dark and one light tone, more than half the range apart.
std::pair<int, int> two_tones(Rng& rng) {
  const int a = uniform(rng, 0, 63);
  const int b = uniform(rng, 192, 255);
  return uniform(rng, 0, 1) ? std::pair{a, b} : std::pair{b, a};
}

using Canvas = std::vector<int>;

void two_tone_diagonals(Canvas& c, int w, int h, Rng& rng) {
  for (int ty = 0; ty < h; ty += kDiagonalTileSize) {
    for (int tx = 0; tx < w; tx += kDiagonalTileSize) {
      const IntraMode mode(oblique_mode(rng));
      const int angle = mode.angle();
      const bool horizontal = mode.is_horizontal_family();
      const auto [v0, v1] = two_tones(rng);
      const bool stripes = uniform(rng, 0, 1) == 1;
      const int period = uniform(rng, 6, 16);
      const int duty = uniform(rng, 2, period - 2);
      const int edge = uniform(rng, 4, kDiagonalTileSize - 4);
      const int phase = uniform(rng, 0, period - 1);
      for (int y = 0; y < kDiagonalTileSize && ty + y < h; ++y) {
        for (int x = 0; x < kDiagonalTileSize && tx + x < w; ++x) {
          const int along = horizontal ? y : x;
          const int across = horizontal ? x : y;
          const int u = along + shear(across - kDiagonalTileSize / 2, angle);
          const bool first = stripes ? ((u + phase) % period + period) % period < duty : u < edge;
          c[static_cast<std::size_t>((ty + y) * w + tx + x)] = first ? v0 : v1;
        }
      }
    }
  }
}

void text_like(Canvas& c, int w, int h, Rng& rng) {
  const int bg = uniform(rng, 0, 1) ? uniform(rng, 200, 255) : uniform(rng, 0, 40);
  std::fill(c.begin(), c.end(), bg);
  const std::array<int, 3> palette = {bg > 128 ? uniform(rng, 0, 60) : uniform(rng, 190, 255), uniform(rng, 0, 255),
                                      uniform(rng, 0, 255)};
  auto put = [&](int x, int y, int v) {
    if (x >= 0 && y >= 0 && x < w && y < h) c[static_cast<std::size_t>(y * w + x)] = v;
  };

  // Panels and buttons.
  for (int i = 0, n = w * h / 1024 + 1; i < n; ++i) {
    const int rw = uniform(rng, 6, std::max(6, w / 3));
    const int rh = uniform(rng, 4, std::max(4, h / 4));
    const int x0 = uniform(rng, 0, w - 1);
    const int y0 = uniform(rng, 0, h - 1);
    const int v = palette[static_cast<std::size_t>(uniform(rng, 1, 2))];
    for (int y = y0; y < y0 + rh; ++y) {
      for (int x = x0; x < x0 + rw; ++x) put(x, y, v);
    }
  }

  // Glyphs: 1-px strokes, axis-aligned or along a mode angle.
  for (int gy = 2; gy + 10 < h; gy += 12) {
    for (int gx = uniform(rng, 1, 4); gx + 8 < w; gx += uniform(rng, 7, 10)) {
      if (uniform(rng, 0, 5) == 0) continue;
      const int ink = palette[0];
      for (int s = 0, strokes = uniform(rng, 2, 4); s < strokes; ++s) {
        switch (uniform(rng, 0, 2)) {
          case 0: {
            const int y = gy + uniform(rng, 0, 9);
            for (int x = gx, len = uniform(rng, 3, 7); x < gx + len; ++x) put(x, y, ink);
            break;
          }
          case 1: {
            const int x = gx + uniform(rng, 0, 6);
            for (int y = gy, len = uniform(rng, 4, 10); y < gy + len; ++y) put(x, y, ink);
            break;
          }
          default: {
            const int angle = IntraMode(uniform(rng, 19, 33)).angle();
            const int x0 = gx + uniform(rng, 1, 5);
            for (int d = 0; d < 10; ++d) put(x0 + shear(d, angle), gy + d, ink);
            break;
          }
        }
      }
    }
  }
}

void ramps(Canvas& c, int w, int h, Rng& rng) {
  // Per-sample horizontal change stays below 1 before rounding, so adjacent
  // samples differ by at most 2 afterwards.
  const double base = uniform_real(rng, 60, 190);
  const double ax = uniform_real(rng, -0.45, 0.45);
  const double ay = uniform_real(rng, -0.6, 0.6);
  const double px = uniform_real(rng, 24, 96);
  const double py = uniform_real(rng, 24, 96);
  const double amp = uniform_real(rng, 0.0, 0.35) * px / (2 * std::numbers::pi);
  std::uniform_real_distribution<double> noise(-0.4, 0.4);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const double v = base + ax * (x - w / 2.0) + ay * (y - h / 2.0) +
                       amp * std::sin(2 * std::numbers::pi * (x / px + y / py)) + noise(rng);
      c[static_cast<std::size_t>(y * w + x)] = std::clamp(static_cast<int>(std::lround(v)), 0, 255);
    }
  }
}

Canvas render(ContentStyle style, int w, int h, Rng& rng) {
  Canvas c(static_cast<std::size_t>(w * h), 0);
  switch (style) {
    case ContentStyle::TextLike: text_like(c, w, h, rng); break;
    case ContentStyle::TwoToneDiagonals: two_tone_diagonals(c, w, h, rng); break;
    case ContentStyle::Ramps: ramps(c, w, h, rng); break;
    case ContentStyle::Mixed: {
      Canvas screen = render(uniform(rng, 0, 1) ? ContentStyle::TextLike : ContentStyle::TwoToneDiagonals, w, h, rng);
      Canvas camera = render(ContentStyle::Ramps, w, h, rng);
      const int split = w / 2 / 4 * 4;
      for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
          const auto i = static_cast<std::size_t>(y * w + x);
          c[i] = x < split ? screen[i] : camera[i];
        }
      }
      break;
    }
  }
  return c;
}

}  // namespace

std::string_view to_string(ContentStyle s) { return kStyleNames[static_cast<std::size_t>(s)]; }

std::optional<ContentStyle> parse_content_style(std::string_view name) {
  for (std::size_t i = 0; i < kStyleNames.size(); ++i) {
    if (kStyleNames[i] == name) return static_cast<ContentStyle>(i);
  }
  return std::nullopt;
}

Frame gen_screen_content(const ContentSpec& spec) {
  if (spec.width < 4 || spec.height < 4 || spec.width % 4 || spec.height % 4) {
    throw UsageError("content dimensions must be positive multiples of 4");
  }
  if (spec.planes != 1 && spec.planes != 3) throw UsageError("plane count must be 1 or 3");
  if (spec.bit_depth != 8 && spec.bit_depth != 10) throw UsageError("bit depth must be 8 or 10");
  Rng rng(spec.seed);
  const Canvas luma = render(spec.style, spec.width, spec.height, rng);
  const int shift = spec.bit_depth - 8;

  std::vector<Plane> planes;
  for (int p = 0; p < spec.planes; ++p) {
    // Chroma is an affine remap of luma: contraction by at most 0.9 keeps the
    // ramp bound and keeps distinct tones distinct.
    const double gain = p == 0 ? 1.0 : uniform_real(rng, 0.3, 0.9) * (uniform(rng, 0, 1) ? 1 : -1);
    std::vector<Sample> s(luma.size());
    for (std::size_t i = 0; i < luma.size(); ++i) {
      const int v = p == 0 ? luma[i] : static_cast<int>(std::lround(128 + gain * (luma[i] - 128)));
      s[i] = static_cast<Sample>(std::clamp(v, 0, 255) << shift);
    }
    planes.emplace_back(spec.width, spec.height, spec.bit_depth, std::move(s));
  }
  return Frame(std::move(planes));
}

std::vector<Frame> gen_corpus(const ContentSpec& spec, int count) {
  std::vector<Frame> out;
  ContentSpec s = spec;
  for (int i = 0; i < count; ++i) {
    s.seed = spec.seed + static_cast<std::uint64_t>(i);
    out.push_back(gen_screen_content(s));
  }
  return out;
}

}  // namespace sintra
