#include "sintra/image_io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iterator>
#include <string>

namespace sintra {

namespace {

std::vector<unsigned char> read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const std::filesystem::path& path, const std::vector<unsigned char>& bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error("write failed for " + path.string());
}

class PnmHeaderReader {
 public:
  explicit PnmHeaderReader(const std::vector<unsigned char>& bytes) : bytes_(bytes) {}

  int next_int() {
    skip_space_and_comments();
    if (pos_ >= bytes_.size() || !std::isdigit(bytes_[pos_])) throw Error("malformed PNM header");
    long value = 0;
    while (pos_ < bytes_.size() && std::isdigit(bytes_[pos_])) {
      value = value * 10 + (bytes_[pos_++] - '0');
      if (value > 1 << 24) throw Error("malformed PNM header: value too large");
    }
    return static_cast<int>(value);
  }

  // Exactly one whitespace byte separates maxval from the raster.
  std::size_t raster_offset() {
    if (pos_ >= bytes_.size() || !std::isspace(bytes_[pos_])) throw Error("malformed PNM header");
    return pos_ + 1;
  }

 private:
  void skip_space_and_comments() {
    while (pos_ < bytes_.size()) {
      if (std::isspace(bytes_[pos_])) {
        ++pos_;
      } else if (bytes_[pos_] == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  const std::vector<unsigned char>& bytes_;
  std::size_t pos_ = 2;
};

int bit_depth_for_maxval(int maxval) {
  if (maxval == 255) return 8;
  if (maxval == 1023) return 10;
  throw Error("unsupported PNM maxval " + std::to_string(maxval) + " (expected 255 or 1023)");
}

Frame load_pnm(const std::filesystem::path& path, ImageFormat format) {
  const auto bytes = read_file(path);
  if (bytes.size() < 2 || bytes[0] != 'P') throw Error("malformed PNM header in " + path.string());
  const char kind = static_cast<char>(bytes[1]);
  const int planes = format == ImageFormat::Pgm ? 1 : 3;
  if ((planes == 1 && kind != '5') || (planes == 3 && kind != '6')) {
    throw Error("unexpected PNM magic in " + path.string());
  }
  PnmHeaderReader header(bytes);
  const int width = header.next_int();
  const int height = header.next_int();
  const int maxval = header.next_int();
  const int bit_depth = bit_depth_for_maxval(maxval);
  const std::size_t offset = header.raster_offset();
  const std::size_t bytes_per_sample = bit_depth > 8 ? 2 : 1;
  const std::size_t count = static_cast<std::size_t>(width) * height * planes;
  if (bytes.size() - offset < count * bytes_per_sample) throw Error("truncated PNM payload in " + path.string());

  std::vector<std::vector<Sample>> data(planes, std::vector<Sample>(static_cast<std::size_t>(width) * height));
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t at = offset + i * bytes_per_sample;
    const int value = bytes_per_sample == 2 ? (bytes[at] << 8) | bytes[at + 1] : bytes[at];
    if (value > maxval) throw Error("sample exceeds declared maxval in " + path.string());
    data[i % planes][i / planes] = static_cast<Sample>(value);
  }
  std::vector<Plane> out;
  for (auto& d : data) out.emplace_back(width, height, bit_depth, std::move(d));
  return Frame(std::move(out));
}

void store_pnm(const Frame& frame, const std::filesystem::path& path, ImageFormat format) {
  const int planes = format == ImageFormat::Pgm ? 1 : 3;
  if (frame.plane_count() != planes) {
    throw UsageError(std::string(format == ImageFormat::Pgm ? "PGM" : "PPM") + " cannot hold a " +
                     std::to_string(frame.plane_count()) + "-plane frame");
  }
  const int maxval = (1 << frame.bit_depth()) - 1;
  const std::string header = std::string(planes == 1 ? "P5" : "P6") + "\n" + std::to_string(frame.width()) +
                             " " + std::to_string(frame.height()) + "\n" + std::to_string(maxval) + "\n";
  std::vector<unsigned char> bytes(header.begin(), header.end());
  const bool wide = frame.bit_depth() > 8;
  for (int y = 0; y < frame.height(); ++y) {
    for (int x = 0; x < frame.width(); ++x) {
      for (int p = 0; p < planes; ++p) {
        const Sample s = frame.plane(p).at(x, y);
        if (wide) bytes.push_back(static_cast<unsigned char>(s >> 8));
        bytes.push_back(static_cast<unsigned char>(s & 0xff));
      }
    }
  }
  write_file(path, bytes);
}

std::size_t raw_frame_bytes(const RawLayout& layout) {
  const std::size_t per_sample = layout.bit_depth > 8 ? 2 : 1;
  return static_cast<std::size_t>(layout.width) * layout.height * layout.plane_count * per_sample;
}

Frame decode_raw(const unsigned char* data, const RawLayout& layout) {
  const bool wide = layout.bit_depth > 8;
  const int maxval = (1 << layout.bit_depth) - 1;
  const std::size_t n = static_cast<std::size_t>(layout.width) * layout.height;
  std::vector<Plane> planes;
  for (int p = 0; p < layout.plane_count; ++p) {
    std::vector<Sample> samples(n);
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t k = static_cast<std::size_t>(p) * n + i;
      const int value = wide ? data[2 * k] | (data[2 * k + 1] << 8) : data[k];
      if (value > maxval) throw Error("raw sample exceeds bit depth");
      samples[i] = static_cast<Sample>(value);
    }
    planes.emplace_back(layout.width, layout.height, layout.bit_depth, std::move(samples));
  }
  return Frame(std::move(planes));
}

void append_raw(const Frame& frame, std::vector<unsigned char>& bytes) {
  const bool wide = frame.bit_depth() > 8;
  for (const Plane& plane : frame.planes()) {
    for (Sample s : plane.samples()) {
      bytes.push_back(static_cast<unsigned char>(s & 0xff));
      if (wide) bytes.push_back(static_cast<unsigned char>(s >> 8));
    }
  }
}

}  // namespace

std::optional<ImageFormat> parse_image_format(std::string_view name) {
  if (name == "pgm") return ImageFormat::Pgm;
  if (name == "ppm") return ImageFormat::Ppm;
  if (name == "raw" || name == "raw-planar") return ImageFormat::RawPlanar;
  return std::nullopt;
}

std::optional<ImageFormat> format_from_extension(const std::filesystem::path& path) {
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (ext == ".pgm") return ImageFormat::Pgm;
  if (ext == ".ppm") return ImageFormat::Ppm;
  if (ext == ".raw" || ext == ".yuv" || ext == ".rgb") return ImageFormat::RawPlanar;
  return std::nullopt;
}

Frame load_image(const std::filesystem::path& path, ImageFormat format, const std::optional<RawLayout>& layout) {
  if (format != ImageFormat::RawPlanar) return load_pnm(path, format);
  if (!layout) throw UsageError("raw planar input needs width, height, bit depth and plane count");
  const auto bytes = read_file(path);
  if (bytes.size() < raw_frame_bytes(*layout)) throw Error("truncated raw payload in " + path.string());
  return decode_raw(bytes.data(), *layout);
}

std::vector<Frame> load_raw_frames(const std::filesystem::path& path, const RawLayout& layout) {
  const auto bytes = read_file(path);
  const std::size_t frame_bytes = raw_frame_bytes(layout);
  if (frame_bytes == 0 || bytes.empty() || bytes.size() % frame_bytes != 0) {
    throw Error("raw file size is not a whole number of frames: " + path.string());
  }
  std::vector<Frame> frames;
  for (std::size_t off = 0; off < bytes.size(); off += frame_bytes) frames.push_back(decode_raw(bytes.data() + off, layout));
  return frames;
}

void store_image(const Frame& frame, const std::filesystem::path& path, ImageFormat format) {
  if (format != ImageFormat::RawPlanar) {
    store_pnm(frame, path, format);
    return;
  }
  std::vector<unsigned char> bytes;
  append_raw(frame, bytes);
  write_file(path, bytes);
}

void store_raw_frames(const std::vector<Frame>& frames, const std::filesystem::path& path) {
  std::vector<unsigned char> bytes;
  for (const Frame& f : frames) append_raw(f, bytes);
  write_file(path, bytes);
}

}  // namespace sintra
