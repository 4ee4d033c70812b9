#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <vector>

#include "rdc/errors.hpp"

namespace rdc {

/// 8-bit RGB image, row-major, interleaved channels.
struct Image {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> pixels;  // size = 3 * width * height

  std::uint8_t channel(int x, int y, int c) const {
    return pixels[3 * (static_cast<std::size_t>(y) * width + x) + c];
  }
};

/// Per-pixel foreground flags paired with an Image of equal dimensions.
struct ForegroundMask {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> flags;  // 0 = background, nonzero = foreground

  static ForegroundMask all_foreground(int width, int height);

  bool foreground(int x, int y) const {
    return flags[static_cast<std::size_t>(y) * width + x] != 0;
  }
  long foreground_count() const;
};

/// Reads a binary PPM (P6). Only maxval 255 is accepted; anything else is a
/// ParseError. Header comments (#) are allowed.
Image read_ppm(std::istream& in);
Image read_ppm_file(const std::filesystem::path& path);
void write_ppm(std::ostream& out, const Image& image);
void write_ppm_file(const std::filesystem::path& path, const Image& image);

/// Reads a PGM mask (binary P5 or ASCII P2); any sample > 0 is foreground.
/// Two-byte P5 samples (maxval > 255) are big-endian per the PNM spec.
ForegroundMask read_pgm_mask(std::istream& in);
ForegroundMask read_pgm_mask_file(const std::filesystem::path& path);
void write_pgm_mask(std::ostream& out, const ForegroundMask& mask);
void write_pgm_mask_file(const std::filesystem::path& path, const ForegroundMask& mask);

}  // namespace rdc
