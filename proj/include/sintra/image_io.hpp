#pragma once

#include <filesystem>
#include <optional>
#include <string_view>
#include <vector>

#include "sintra/core.hpp"

namespace sintra {

enum class ImageFormat { Pgm, Ppm, RawPlanar };

/// Geometry of a raw planar file, which carries no header of its own.
struct RawLayout {
  int width = 0;
  int height = 0;
  int bit_depth = 8;
  int plane_count = 1;
};

std::optional<ImageFormat> parse_image_format(std::string_view name);

/// Guesses the format from the file extension (.pgm, .ppm, .raw/.yuv/.rgb).
std::optional<ImageFormat> format_from_extension(const std::filesystem::path& path);

/// Reads one frame. PGM yields one plane, PPM three; raw planar needs a layout.
/// Samples of more than 8 bits are stored as little-endian 16-bit words in raw
/// files and big-endian words in PNM files (as PNM requires).
Frame load_image(const std::filesystem::path& path, ImageFormat format,
                 const std::optional<RawLayout>& layout = std::nullopt);

/// Reads every consecutive frame of a raw planar file.
std::vector<Frame> load_raw_frames(const std::filesystem::path& path, const RawLayout& layout);

void store_image(const Frame& frame, const std::filesystem::path& path, ImageFormat format);

/// Appends frames back to back in raw planar layout.
void store_raw_frames(const std::vector<Frame>& frames, const std::filesystem::path& path);

}  // namespace sintra
