#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sintra/bitstream.hpp"
#include "sintra/core.hpp"
#include "sintra/rdo.hpp"
#include "sintra/variant.hpp"

namespace sintra {

/// Decoding failure. `block` names the luma block being parsed when the
/// failure happened inside a frame payload.
class DecodeError : public Error {
 public:
  DecodeError(const std::string& what, int frame_index, std::optional<BlockRef> block = std::nullopt);

  int frame_index() const { return frame_index_; }
  const std::optional<BlockRef>& block() const { return block_; }

 private:
  int frame_index_;
  std::optional<BlockRef> block_;
};

struct EncoderConfig {
  CodecParams params;
  int candidate_list_size = 8;

  /// Lambda for the configured qp, scaled for the bit depth's sample range.
  RdoConfig rdo(int bit_depth) const;
};

inline constexpr int kCtuSize = 32;

struct FrameEncodeResult {
  std::vector<std::uint8_t> payload;
  Frame recon;  ///< padded
  std::vector<ModeDecision> decisions;  ///< coding order; luma then chroma per leaf
  std::size_t flags_written = 0;
};

/// Codes one frame whose dimensions are multiples of 32.
FrameEncodeResult encode_frame(const Frame& padded, const EncoderConfig& cfg);

struct FrameDecodeOptions {
  /// Replaces the implicit selectors with the given decisions (same order as
  /// the encoder produced them) for blocks using per-block or per-sample
  /// selection.
  const std::vector<ModeDecision>* replay = nullptr;
};

struct FrameDecodeResult {
  Frame recon;  ///< padded
  std::vector<ModeDecision> decisions;
  std::size_t flags_read = 0;
};

FrameDecodeResult decode_frame(std::span<const std::uint8_t> payload, int padded_width, int padded_height,
                               int bit_depth, int planes, const CodecParams& params,
                               const FrameDecodeOptions& options = {}, int frame_index = 0);

struct EncodeResult {
  std::vector<std::uint8_t> stream;
  std::vector<Frame> recon;  ///< cropped
  std::vector<std::vector<ModeDecision>> decisions;
  std::size_t flag_count = 0;
};

/// Encodes frames of identical geometry into one stream; each frame starts
/// from fresh contexts.
EncodeResult encode(std::span<const Frame> frames, const EncoderConfig& cfg);

struct DecodeOptions {
  const std::vector<std::vector<ModeDecision>>* replay = nullptr;
  bool verify_checksum = true;
};

struct DecodeResult {
  StreamHeader header;
  std::vector<Frame> frames;  ///< cropped
  std::vector<std::vector<ModeDecision>> decisions;
  std::size_t flag_count = 0;
};

DecodeResult decode(std::span<const std::uint8_t> stream, const DecodeOptions& options = {});

}  // namespace sintra
