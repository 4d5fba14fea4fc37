#include "sintra/bitstream.hpp"

#include <zlib.h>

#include <algorithm>
#include <string>

namespace sintra {

namespace {

class Writer {
 public:
  explicit Writer(std::vector<std::uint8_t>& out) : out_(out) {}
  void put(std::uint64_t v, int bytes) {
    for (int i = 0; i < bytes; ++i) out_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  }

 private:
  std::vector<std::uint8_t>& out_;
};

class Reader {
 public:
  explicit Reader(std::span<const std::uint8_t> in) : in_(in) {}
  std::uint64_t get(int bytes, const char* what) {
    need(static_cast<std::size_t>(bytes), what);
    std::uint64_t v = 0;
    for (int i = 0; i < bytes; ++i) v |= static_cast<std::uint64_t>(in_[pos_++]) << (8 * i);
    return v;
  }
  std::span<const std::uint8_t> take(std::size_t n, const char* what) {
    need(n, what);
    auto s = in_.subspan(pos_, n);
    pos_ += n;
    return s;
  }
  std::size_t pos() const { return pos_; }
  std::size_t remaining() const { return in_.size() - pos_; }

 private:
  void need(std::size_t n, const char* what) {
    if (remaining() < n) throw FormatError(std::string("truncated stream while reading ") + what);
  }
  std::span<const std::uint8_t> in_;
  std::size_t pos_ = 0;
};

}  // namespace

void validate_header(const StreamHeader& h) {
  if (h.version != kStreamVersion) throw FormatError("unsupported stream version " + std::to_string(h.version));
  if (h.width < 4 || h.height < 4 || h.width % 4 || h.height % 4 || h.width > kMaxDimension ||
      h.height > kMaxDimension) {
    throw FormatError("invalid frame dimensions");
  }
  if (h.bit_depth != 8 && h.bit_depth != 10) throw FormatError("unsupported bit depth");
  if (h.planes != 1 && h.planes != 3) throw FormatError("plane count must be 1 or 3");
  if (h.params.qp < 0 || h.params.qp > 51) throw FormatError("qp out of range");
  if (static_cast<int>(h.params.variant) > static_cast<int>(Variant::Rdo)) throw FormatError("unknown variant");
  if (h.params.sad_threshold <= 0 || h.params.sad_threshold > 0xFFFF || h.params.pixdiff_threshold <= 0 ||
      h.params.pixdiff_threshold > 0xFFFF) {
    throw FormatError("threshold out of range");
  }
}

std::vector<std::uint8_t> serialize_stream(const StreamHeader& h, std::span<const FrameSegment> frames) {
  validate_header(h);
  if (frames.size() != h.frame_count) throw UsageError("frame count does not match the header");
  std::vector<std::uint8_t> out(kMagic.begin(), kMagic.end());
  Writer w(out);
  w.put(h.version, 2);
  w.put(static_cast<std::uint32_t>(h.width), 4);
  w.put(static_cast<std::uint32_t>(h.height), 4);
  w.put(static_cast<std::uint32_t>(h.bit_depth), 1);
  w.put(static_cast<std::uint32_t>(h.planes), 1);
  w.put(static_cast<std::uint32_t>(h.params.qp), 1);
  w.put(static_cast<std::uint32_t>(h.params.variant), 1);
  w.put(static_cast<std::uint32_t>(h.params.sad_threshold), 2);
  w.put(static_cast<std::uint32_t>(h.params.pixdiff_threshold), 2);
  w.put((h.params.single_context ? 1u : 0u) | (h.params.restrict_4x4 ? 2u : 0u), 1);
  w.put(h.frame_count, 4);
  for (const FrameSegment& f : frames) {
    w.put(f.payload.size(), 4);
    out.insert(out.end(), f.payload.begin(), f.payload.end());
    w.put(f.checksum, 4);
  }
  return out;
}

ParsedStream parse_stream(std::span<const std::uint8_t> bytes) {
  if (bytes.empty()) throw FormatError("empty stream");
  if (bytes.size() < kHeaderBytes) throw FormatError("stream shorter than its header");
  if (!std::equal(kMagic.begin(), kMagic.end(), bytes.begin())) throw FormatError("bad magic");
  Reader r(bytes.subspan(kMagic.size()));
  ParsedStream ps;
  StreamHeader& h = ps.header;
  h.version = static_cast<std::uint16_t>(r.get(2, "version"));
  h.width = static_cast<int>(r.get(4, "width"));
  h.height = static_cast<int>(r.get(4, "height"));
  h.bit_depth = static_cast<int>(r.get(1, "bit depth"));
  h.planes = static_cast<int>(r.get(1, "plane count"));
  h.params.qp = static_cast<int>(r.get(1, "qp"));
  h.params.variant = static_cast<Variant>(r.get(1, "variant"));
  h.params.sad_threshold = static_cast<int>(r.get(2, "sad threshold"));
  h.params.pixdiff_threshold = static_cast<int>(r.get(2, "pixdiff threshold"));
  const auto flags = r.get(1, "flags");
  if (flags & ~3u) throw FormatError("unknown header flags");
  h.params.single_context = flags & 1u;
  h.params.restrict_4x4 = flags & 2u;
  h.frame_count = static_cast<std::uint32_t>(r.get(4, "frame count"));
  validate_header(h);
  if (h.frame_count == 0) throw FormatError("stream carries no frames");

  for (std::uint32_t i = 0; i < h.frame_count; ++i) {
    ps.frame_offsets.push_back(kMagic.size() + r.pos());
    const auto length = static_cast<std::size_t>(r.get(4, "frame length"));
    if (length == 0) throw FormatError("empty frame payload");
    FrameSegment seg;
    const auto payload = r.take(length, "frame payload");
    seg.payload.assign(payload.begin(), payload.end());
    seg.checksum = static_cast<std::uint32_t>(r.get(4, "frame checksum"));
    ps.frames.push_back(std::move(seg));
  }
  if (r.remaining() != 0) throw FormatError("trailing bytes after the last frame");
  return ps;
}

std::uint32_t frame_checksum(const Frame& frame) {
  uLong crc = crc32(0L, Z_NULL, 0);
  std::vector<std::uint8_t> buf;
  for (const Plane& p : frame.planes()) {
    buf.clear();
    buf.reserve(p.samples().size() * 2);
    for (Sample s : p.samples()) {
      buf.push_back(static_cast<std::uint8_t>(s & 0xFF));
      buf.push_back(static_cast<std::uint8_t>(s >> 8));
    }
    crc = crc32(crc, buf.data(), static_cast<uInt>(buf.size()));
  }
  return static_cast<std::uint32_t>(crc);
}

}  // namespace sintra
