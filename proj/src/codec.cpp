#include "sintra/codec.hpp"

#include <algorithm>
#include <array>
#include <utility>

#include "sintra/syntax.hpp"
#include "sintra/transform.hpp"

namespace sintra {

namespace {

int depth_of(int size) {
  switch (size) {
    case 32: return 0;
    case 16: return 1;
    case 8: return 2;
    default: return 3;
  }
}

std::string describe(const BlockRef& b) {
  return "block (" + std::to_string(b.x) + ", " + std::to_string(b.y) + ") size " + std::to_string(b.size);
}

// Per-4x4-unit state that later blocks read for context selection:
// quadtree depth and whether the luma prediction used Nearest.
class UnitMaps {
 public:
  UnitMaps(int width, int height)
      : cols_(width / 4), rows_(height / 4), depth_(static_cast<std::size_t>(cols_ * rows_), -1),
        nearest_(depth_.size(), -1) {}

  int split_context(int x, int y, int depth) const {
    return (depth_at(x / 4 - 1, y / 4) > depth ? 1 : 0) + (depth_at(x / 4, y / 4 - 1) > depth ? 1 : 0);
  }

  int interp_context(int x, int y) const {
    return interp_context_index(flag_at(x / 4, y / 4 - 1), flag_at(x / 4 - 1, y / 4));
  }

  int depth_at(int ux, int uy) const { return inside(ux, uy) ? depth_[index(ux, uy)] : -1; }

  void set_leaf(const BlockRef& b, bool nearest) {
    const auto d = static_cast<std::int8_t>(depth_of(b.size));
    for (int uy = b.y / 4; uy < (b.y + b.size) / 4; ++uy) {
      for (int ux = b.x / 4; ux < (b.x + b.size) / 4; ++ux) {
        depth_[index(ux, uy)] = d;
        nearest_[index(ux, uy)] = nearest ? 1 : 0;
      }
    }
  }

  std::pair<std::vector<std::int8_t>, std::vector<std::int8_t>> save(const BlockRef& b) const {
    std::pair<std::vector<std::int8_t>, std::vector<std::int8_t>> out;
    for (int uy = b.y / 4; uy < (b.y + b.size) / 4; ++uy) {
      for (int ux = b.x / 4; ux < (b.x + b.size) / 4; ++ux) {
        out.first.push_back(depth_[index(ux, uy)]);
        out.second.push_back(nearest_[index(ux, uy)]);
      }
    }
    return out;
  }

  void load(const BlockRef& b, const std::pair<std::vector<std::int8_t>, std::vector<std::int8_t>>& s) {
    std::size_t i = 0;
    for (int uy = b.y / 4; uy < (b.y + b.size) / 4; ++uy) {
      for (int ux = b.x / 4; ux < (b.x + b.size) / 4; ++ux, ++i) {
        depth_[index(ux, uy)] = s.first[i];
        nearest_[index(ux, uy)] = s.second[i];
      }
    }
  }

 private:
  bool inside(int ux, int uy) const { return ux >= 0 && uy >= 0 && ux < cols_ && uy < rows_; }
  std::size_t index(int ux, int uy) const { return static_cast<std::size_t>(uy * cols_ + ux); }
  NeighbourFlag flag_at(int ux, int uy) const {
    if (!inside(ux, uy) || nearest_[index(ux, uy)] < 0) return std::nullopt;
    return nearest_[index(ux, uy)];
  }

  int cols_;
  int rows_;
  std::vector<std::int8_t> depth_;
  std::vector<std::int8_t> nearest_;
};

std::vector<Sample> reconstruct_samples(const PredBlock& pred, std::span<const std::int32_t> levels, int size,
                                        const QuantParams& qp, int max_value) {
  const auto residual = dequant_inverse(levels, size, qp);
  std::vector<Sample> out(pred.samples.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = static_cast<Sample>(std::clamp(pred.samples[i] + residual[i], 0, max_value));
  }
  return out;
}

class FrameEncoder {
 public:
  FrameEncoder(const Frame& original, const EncoderConfig& cfg)
      : original_(original),
        recon_(original.width(), original.height(), original.bit_depth(), original.plane_count()),
        maps_(original.width(), original.height()),
        rdo_(cfg.rdo(original.bit_depth())) {}

  FrameEncodeResult run() {
    ArithmeticEncoder enc;
    ContextSet write_ctx;
    for (int y = 0; y < original_.height(); y += kCtuSize) {
      for (int x = 0; x < original_.width(); x += kCtuSize) {
        search(x, y, kCtuSize);
        std::size_t next = 0;
        write_node(enc, write_ctx, x, y, kCtuSize, next);
        plans_.clear();
      }
    }
    FrameEncodeResult r;
    r.payload = enc.finish();
    r.recon = std::move(recon_);
    r.decisions = std::move(decisions_);
    r.flags_written = flags_;
    return r;
  }

 private:
  struct LeafPlan {
    BlockRef block;
    IntraMode mode;
    InterpKind interp = InterpKind::Bilinear;
    bool flag = false;
    int interp_ctx = 0;
    std::vector<std::int32_t> luma_levels;
    int chroma_index = kChromaDerived;
    std::array<std::vector<std::int32_t>, 2> chroma_levels;
  };

  struct Snapshot {
    ContextSet ctx;
    std::vector<std::vector<Sample>> recon;
    std::pair<std::vector<std::int8_t>, std::vector<std::int8_t>> maps;
    std::size_t decision_base = 0;
    std::size_t plan_base = 0;
    std::vector<ModeDecision> decisions;
    std::vector<LeafPlan> plans;
  };

  bool has_chroma() const { return original_.plane_count() > 1; }

  double to_cost(std::uint64_t rate_cost) const {
    const double bits = static_cast<double>(rate_cost) * kCostScale;
    return rdo_.params.lossless() ? bits : rdo_.lambda * bits;
  }

  Snapshot snapshot(const BlockRef& b, std::size_t decision_base, std::size_t plan_base) const {
    Snapshot s;
    s.ctx = ctx_;
    for (int p = 0; p < recon_.plane_count(); ++p) {
      BlockRef pb = b;
      pb.plane_index = p;
      s.recon.push_back(extract_block(recon_.plane(p), pb));
    }
    s.maps = maps_.save(b);
    s.decision_base = decision_base;
    s.plan_base = plan_base;
    s.decisions.assign(decisions_.begin() + static_cast<std::ptrdiff_t>(decision_base), decisions_.end());
    s.plans.assign(plans_.begin() + static_cast<std::ptrdiff_t>(plan_base), plans_.end());
    return s;
  }

  void restore(const BlockRef& b, const Snapshot& s) {
    ctx_ = s.ctx;
    for (int p = 0; p < recon_.plane_count(); ++p) {
      BlockRef pb = b;
      pb.plane_index = p;
      store_block(recon_.plane(p), pb, s.recon[static_cast<std::size_t>(p)]);
    }
    maps_.load(b, s.maps);
    decisions_.resize(s.decision_base);
    decisions_.insert(decisions_.end(), s.decisions.begin(), s.decisions.end());
    plans_.resize(s.plan_base);
    plans_.insert(plans_.end(), s.plans.begin(), s.plans.end());
  }

  // Leaves the chosen coding of the node committed and returns its cost.
  double search(int x, int y, int size) {
    const BlockRef block{0, x, y, size};
    if (size == 4) return code_leaf(block, std::nullopt);

    const int split_ctx = maps_.split_context(x, y, depth_of(size));
    const Snapshot before = snapshot(block, decisions_.size(), plans_.size());
    const double leaf_cost = code_leaf(block, split_ctx);
    const Snapshot leaf = snapshot(block, before.decision_base, before.plan_base);

    restore(block, before);
    RateEstimator est;
    write_split_flag(est, ctx_, split_ctx, true);
    double split_cost = to_cost(est.cost());
    const int half = size / 2;
    split_cost += search(x, y, half);
    split_cost += search(x + half, y, half);
    split_cost += search(x, y + half, half);
    split_cost += search(x + half, y + half, half);

    if (leaf_cost <= split_cost) {
      restore(block, leaf);
      return leaf_cost;
    }
    return split_cost;
  }

  double code_leaf(const BlockRef& block, std::optional<int> split_ctx) {
    double cost = 0.0;
    if (split_ctx) {
      RateEstimator est;
      write_split_flag(est, ctx_, *split_ctx, false);
      cost += to_cost(est.cost());
    }

    LeafPlan plan;
    plan.block = block;
    plan.interp_ctx = maps_.interp_context(block.x, block.y);
    const BlockEnv env{original_.plane(0), recon_.plane(0), block, ctx_, plan.interp_ctx};
    LumaChoice luma = choose(env, rdo_);
    ctx_ = luma.trial.contexts_after;
    store_block(recon_.plane(0), block, luma.trial.recon);
    cost += luma.decision.cost;
    plan.mode = luma.decision.mode;
    plan.interp = luma.trial.candidate.interp;
    plan.flag = luma.decision.flag_signaled;
    plan.luma_levels = std::move(luma.trial.levels);
    maps_.set_leaf(block, luma.decision.interp == InterpKind::Nearest);
    decisions_.push_back(luma.decision);

    if (has_chroma()) {
      ChromaChoice chroma = choose_chroma(original_, recon_, block, luma.decision, ctx_, rdo_);
      ctx_ = chroma.contexts_after;
      cost += chroma.cost;
      plan.chroma_index = chroma.chroma_index;
      for (std::size_t i = 0; i < chroma.trials.size(); ++i) {
        store_block(recon_.plane(static_cast<int>(i) + 1), chroma.decisions[i].block, chroma.trials[i].recon);
        plan.chroma_levels[i] = std::move(chroma.trials[i].levels);
        decisions_.push_back(std::move(chroma.decisions[i]));
      }
    }
    plans_.push_back(std::move(plan));
    return cost;
  }

  void write_node(ArithmeticEncoder& enc, ContextSet& ctx, int x, int y, int size, std::size_t& next) {
    if (size > 4) {
      const int depth = depth_of(size);
      const bool split = maps_.depth_at(x / 4, y / 4) > depth;
      write_split_flag(enc, ctx, maps_.split_context(x, y, depth), split);
      if (split) {
        const int half = size / 2;
        write_node(enc, ctx, x, y, half, next);
        write_node(enc, ctx, x + half, y, half, next);
        write_node(enc, ctx, x, y + half, half, next);
        write_node(enc, ctx, x + half, y + half, half, next);
        return;
      }
    }
    const LeafPlan& p = plans_.at(next++);
    if (p.block.x != x || p.block.y != y || p.block.size != size) throw Error("encoder tree walk out of step");
    const bool lossless = rdo_.params.lossless();
    write_luma_mode(enc, ctx, p.mode);
    if (p.flag) {
      write_interp_flag(enc, ctx, rdo_.params.single_context ? 0 : p.interp_ctx, p.interp);
      ++flags_;
    }
    write_residual(enc, ctx, p.luma_levels, size, false, lossless);
    if (has_chroma()) {
      write_chroma_mode(enc, ctx, p.chroma_index);
      for (const auto& levels : p.chroma_levels) write_residual(enc, ctx, levels, size, true, lossless);
    }
  }

  const Frame& original_;
  Frame recon_;
  UnitMaps maps_;
  RdoConfig rdo_;
  ContextSet ctx_;
  std::vector<ModeDecision> decisions_;
  std::vector<LeafPlan> plans_;
  std::size_t flags_ = 0;
};

class FrameDecoder {
 public:
  FrameDecoder(int width, int height, int bit_depth, int planes, const CodecParams& params,
               const FrameDecodeOptions& options, int frame_index)
      : recon_(width, height, bit_depth, planes),
        maps_(width, height),
        params_(params),
        selectors_(params.selectors(bit_depth)),
        qp_{params.qp, bit_depth, params.lossless()},
        options_(options),
        frame_index_(frame_index) {}

  FrameDecodeResult run(std::span<const std::uint8_t> payload) {
    std::optional<ArithmeticDecoder> dec;
    try {
      dec.emplace(payload);
    } catch (const Error& e) {
      throw DecodeError(e.what(), frame_index_);
    }
    for (int y = 0; y < recon_.height(); y += kCtuSize) {
      for (int x = 0; x < recon_.width(); x += kCtuSize) decode_node(*dec, x, y, kCtuSize);
    }
    FrameDecodeResult r;
    r.recon = std::move(recon_);
    r.decisions = std::move(decisions_);
    r.flags_read = flags_;
    return r;
  }

 private:
  void decode_node(ArithmeticDecoder& dec, int x, int y, int size) {
    const BlockRef block{0, x, y, size};
    try {
      if (size > 4) {
        const int depth = depth_of(size);
        if (read_split_flag(dec, ctx_, maps_.split_context(x, y, depth))) {
          const int half = size / 2;
          decode_node(dec, x, y, half);
          decode_node(dec, x + half, y, half);
          decode_node(dec, x, y + half, half);
          decode_node(dec, x + half, y + half, half);
          return;
        }
      }
      decode_leaf(dec, block);
    } catch (const DecodeError&) {
      throw;
    } catch (const Error& e) {
      throw DecodeError(std::string(e.what()) + " at " + describe(block), frame_index_, block);
    }
  }

  void decode_leaf(ArithmeticDecoder& dec, const BlockRef& block) {
    const IntraMode mode = read_luma_mode(dec, ctx_);
    const InterpSource source = interp_source(params_, block.size, mode);
    InterpKind signaled = InterpKind::Bilinear;
    if (source == InterpSource::Signaled) {
      const int c = params_.single_context ? 0 : maps_.interp_context(block.x, block.y);
      signaled = read_interp_flag(dec, ctx_, c);
      ++flags_;
    }
    const auto levels = read_residual(dec, ctx_, block.size, false, params_.lossless());
    const ModeDecision luma = reconstruct(block, mode, source, signaled, levels);
    maps_.set_leaf(block, luma.interp == InterpKind::Nearest);

    if (recon_.plane_count() == 1) return;
    const int chroma_index = read_chroma_mode(dec, ctx_);
    const IntraMode chroma_mode = chroma_mode_for(chroma_index, mode);
    const InterpSource chroma_source = interp_source(params_, block.size, chroma_mode);
    const InterpKind inherited = derive_chroma_interp(luma, chroma_index == kChromaDerived);
    for (int p = 1; p < recon_.plane_count(); ++p) {
      BlockRef cb = block;
      cb.plane_index = p;
      const auto chroma_levels = read_residual(dec, ctx_, block.size, true, params_.lossless());
      reconstruct(cb, chroma_mode, chroma_source, inherited, chroma_levels);
    }
  }

  ModeDecision reconstruct(const BlockRef& block, IntraMode mode, InterpSource source, InterpKind signaled,
                           std::span<const std::int32_t> levels) {
    Plane& plane = recon_.plane(block.plane_index);
    const ReferenceSamples refs = build_reference_samples(plane, block);
    const ModeDecision* logged = nullptr;
    if (options_.replay) {
      if (decisions_.size() >= options_.replay->size()) throw DecodeError("replay log too short", frame_index_, block);
      logged = &(*options_.replay)[decisions_.size()];
      if (logged->block != block || logged->mode != mode) {
        throw DecodeError("replay log disagrees with the stream at " + describe(block), frame_index_, block);
      }
    }

    ModeDecision d;
    d.block = block;
    d.mode = mode;
    d.flag_signaled = source == InterpSource::Signaled && block.plane_index == 0;  // chroma inherits, never signals
    PredBlock pred;
    if (logged && source == InterpSource::SadSelect) {
      pred = predict(refs, mode, logged->interp);
      d.interp = logged->interp;
    } else if (logged && source == InterpSource::PixDiff) {
      pred = predict_masked(refs, mode, logged->nearest_mask);
      d.interp = applied_interp(refs, mode, source, selectors_, signaled, pred);
    } else {
      pred = predict_with_source(refs, mode, source, selectors_, signaled);
      d.interp = applied_interp(refs, mode, source, selectors_, signaled, pred);
    }
    if (source == InterpSource::PixDiff) d.nearest_mask = pred.nearest_used;

    store_block(plane, block, reconstruct_samples(pred, levels, block.size, qp_, plane.max_value()));
    decisions_.push_back(d);
    return d;
  }

  Frame recon_;
  UnitMaps maps_;
  CodecParams params_;
  SelectorConfig selectors_;
  QuantParams qp_;
  const FrameDecodeOptions& options_;
  int frame_index_;
  ContextSet ctx_;
  std::vector<ModeDecision> decisions_;
  std::size_t flags_ = 0;
};

void check_padded(int width, int height) {
  if (width <= 0 || height <= 0 || width % kCtuSize || height % kCtuSize) {
    throw UsageError("frame dimensions must be multiples of 32");
  }
}

}  // namespace

DecodeError::DecodeError(const std::string& what, int frame_index, std::optional<BlockRef> block)
    : Error("frame " + std::to_string(frame_index) + ": " + what), frame_index_(frame_index), block_(block) {}

RdoConfig EncoderConfig::rdo(int bit_depth) const {
  RdoConfig r;
  r.params = params;
  r.lambda = lambda_from_qp(params.qp) * static_cast<double>(1 << (2 * (bit_depth - 8)));
  r.candidate_list_size = candidate_list_size;
  return r;
}

FrameEncodeResult encode_frame(const Frame& padded, const EncoderConfig& cfg) {
  check_padded(padded.width(), padded.height());
  return FrameEncoder(padded, cfg).run();
}

FrameDecodeResult decode_frame(std::span<const std::uint8_t> payload, int padded_width, int padded_height,
                               int bit_depth, int planes, const CodecParams& params,
                               const FrameDecodeOptions& options, int frame_index) {
  check_padded(padded_width, padded_height);
  return FrameDecoder(padded_width, padded_height, bit_depth, planes, params, options, frame_index).run(payload);
}

EncodeResult encode(std::span<const Frame> frames, const EncoderConfig& cfg) {
  if (frames.empty()) throw UsageError("nothing to encode");
  const Frame& first = frames.front();
  StreamHeader h;
  h.width = first.width();
  h.height = first.height();
  h.bit_depth = first.bit_depth();
  h.planes = first.plane_count();
  h.params = cfg.params;
  h.frame_count = static_cast<std::uint32_t>(frames.size());
  validate_header(h);

  EncodeResult out;
  std::vector<FrameSegment> segments;
  for (const Frame& f : frames) {
    if (f.width() != h.width || f.height() != h.height || f.bit_depth() != h.bit_depth ||
        f.plane_count() != h.planes) {
      throw UsageError("all frames of a stream must share geometry and bit depth");
    }
    FrameEncodeResult r = encode_frame(pad_to_multiple(f, kCtuSize), cfg);
    Frame cropped = crop(r.recon, h.width, h.height);
    segments.push_back({std::move(r.payload), frame_checksum(cropped)});
    out.recon.push_back(std::move(cropped));
    out.decisions.push_back(std::move(r.decisions));
    out.flag_count += r.flags_written;
  }
  out.stream = serialize_stream(h, segments);
  return out;
}

DecodeResult decode(std::span<const std::uint8_t> stream, const DecodeOptions& options) {
  ParsedStream ps = parse_stream(stream);
  const StreamHeader& h = ps.header;
  if (options.replay && options.replay->size() != ps.frames.size()) {
    throw UsageError("replay log frame count does not match the stream");
  }
  DecodeResult out;
  out.header = h;
  for (std::size_t i = 0; i < ps.frames.size(); ++i) {
    FrameDecodeOptions fo;
    if (options.replay) fo.replay = &(*options.replay)[i];
    FrameDecodeResult r = decode_frame(ps.frames[i].payload, h.padded_width(), h.padded_height(), h.bit_depth,
                                       h.planes, h.params, fo, static_cast<int>(i));
    Frame cropped = crop(r.recon, h.width, h.height);
    if (options.verify_checksum && frame_checksum(cropped) != ps.frames[i].checksum) {
      throw DecodeError("reconstruction checksum mismatch", static_cast<int>(i));
    }
    out.frames.push_back(std::move(cropped));
    out.decisions.push_back(std::move(r.decisions));
    out.flag_count += r.flags_read;
  }
  return out;
}

}  // namespace sintra
