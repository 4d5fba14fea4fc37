#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "sintra/core.hpp"
#include "sintra/variant.hpp"

namespace sintra {

/// Malformed container: bad magic, header values out of range, truncation.
class FormatError : public Error {
 public:
  using Error::Error;
};

inline constexpr std::array<char, 8> kMagic = {'S', 'I', 'N', 'T', 'R', 'A', '0', '1'};
inline constexpr std::uint16_t kStreamVersion = 1;
/// Largest width or height a stream may declare.
inline constexpr int kMaxDimension = 16384;

// Layout, all integers little-endian:
//   magic[8] version:u16 width:u32 height:u32 bit_depth:u8 planes:u8 qp:u8
//   variant:u8 sad_threshold:u16 pixdiff_threshold:u16 flags:u8 frame_count:u32
//   then per frame: length:u32 payload[length] crc32:u32
// flags bit 0 = single interpolation-flag context, bit 1 = 4x4 restriction.
struct StreamHeader {
  std::uint16_t version = kStreamVersion;
  int width = 0;   ///< true (uncropped) dimensions
  int height = 0;
  int bit_depth = 8;
  int planes = 1;
  CodecParams params;
  std::uint32_t frame_count = 0;

  /// Dimensions rounded up to whole 32x32 units.
  int padded_width() const { return (width + 31) / 32 * 32; }
  int padded_height() const { return (height + 31) / 32 * 32; }

  bool operator==(const StreamHeader&) const = default;
};

inline constexpr std::size_t kHeaderBytes = 8 + 2 + 4 + 4 + 1 + 1 + 1 + 1 + 2 + 2 + 1 + 4;

struct FrameSegment {
  std::vector<std::uint8_t> payload;
  std::uint32_t checksum = 0;
};

struct ParsedStream {
  StreamHeader header;
  std::vector<FrameSegment> frames;
  std::vector<std::size_t> frame_offsets;  ///< byte offset of each frame's length field
};

/// Throws FormatError for values the layout cannot carry.
void validate_header(const StreamHeader& header);

std::vector<std::uint8_t> serialize_stream(const StreamHeader& header, std::span<const FrameSegment> frames);
ParsedStream parse_stream(std::span<const std::uint8_t> bytes);

/// CRC-32 over every plane's samples, each as a little-endian 16-bit value.
std::uint32_t frame_checksum(const Frame& frame);

}  // namespace sintra
