#include "rdc/image.hpp"

#include <cctype>
#include <fstream>
#include <limits>
#include <string>

namespace rdc {

namespace {

constexpr long kMaxPixels = 1L << 26;  // 64M pixels; guards absurd headers

// Whitespace- and comment-skipping token reader for PNM headers.
std::string pnm_token(std::istream& in) {
  int ch = in.get();
  for (;;) {
    while (ch != EOF && std::isspace(ch)) ch = in.get();
    if (ch == '#') {
      while (ch != EOF && ch != '\n') ch = in.get();
      continue;
    }
    break;
  }
  if (ch == EOF) throw ParseError("PNM header: unexpected end of file");
  std::string token;
  while (ch != EOF && !std::isspace(ch)) {
    token.push_back(static_cast<char>(ch));
    ch = in.get();
  }
  return token;
}

long pnm_int(std::istream& in, const char* what) {
  const std::string token = pnm_token(in);
  try {
    std::size_t used = 0;
    const long value = std::stol(token, &used);
    if (used != token.size()) throw std::invalid_argument(token);
    return value;
  } catch (const std::exception&) {
    throw ParseError(std::string("PNM header: invalid ") + what + " '" + token + "'");
  }
}

void check_dims(long width, long height) {
  if (width <= 0 || height <= 0 || width * height > kMaxPixels) {
    throw ParseError("PNM header: invalid dimensions " + std::to_string(width) + "x" +
                     std::to_string(height));
  }
}

}  // namespace

ForegroundMask ForegroundMask::all_foreground(int width, int height) {
  ForegroundMask mask;
  mask.width = width;
  mask.height = height;
  mask.flags.assign(static_cast<std::size_t>(width) * height, 1);
  return mask;
}

long ForegroundMask::foreground_count() const {
  long count = 0;
  for (const auto flag : flags) count += flag != 0;
  return count;
}

Image read_ppm(std::istream& in) {
  if (pnm_token(in) != "P6") throw ParseError("PPM: expected magic 'P6'");
  const long width = pnm_int(in, "width");
  const long height = pnm_int(in, "height");
  check_dims(width, height);
  const long maxval = pnm_int(in, "maxval");
  if (maxval != 255) {
    throw ParseError("PPM: only maxval 255 is supported, got " + std::to_string(maxval));
  }
  // Exactly one whitespace byte separates the header from the raster.
  Image image;
  image.width = static_cast<int>(width);
  image.height = static_cast<int>(height);
  image.pixels.resize(static_cast<std::size_t>(width) * height * 3);
  in.read(reinterpret_cast<char*>(image.pixels.data()),
          static_cast<std::streamsize>(image.pixels.size()));
  if (in.gcount() != static_cast<std::streamsize>(image.pixels.size())) {
    throw ParseError("PPM: truncated pixel data");
  }
  return image;
}

void write_ppm(std::ostream& out, const Image& image) {
  out << "P6\n" << image.width << ' ' << image.height << "\n255\n";
  out.write(reinterpret_cast<const char*>(image.pixels.data()),
            static_cast<std::streamsize>(image.pixels.size()));
}

ForegroundMask read_pgm_mask(std::istream& in) {
  const std::string magic = pnm_token(in);
  if (magic != "P5" && magic != "P2") throw ParseError("PGM: expected magic 'P5' or 'P2'");
  const long width = pnm_int(in, "width");
  const long height = pnm_int(in, "height");
  check_dims(width, height);
  const long maxval = pnm_int(in, "maxval");
  if (maxval <= 0 || maxval > 65535) {
    throw ParseError("PGM: invalid maxval " + std::to_string(maxval));
  }
  const std::size_t count = static_cast<std::size_t>(width) * height;
  ForegroundMask mask;
  mask.width = static_cast<int>(width);
  mask.height = static_cast<int>(height);
  mask.flags.resize(count);
  if (magic == "P2") {
    for (std::size_t i = 0; i < count; ++i) {
      const long sample = pnm_int(in, "sample");
      if (sample < 0 || sample > maxval) throw ParseError("PGM: sample out of range");
      mask.flags[i] = sample > 0 ? 1 : 0;
    }
    return mask;
  }
  const int bytes_per_sample = maxval > 255 ? 2 : 1;
  std::vector<std::uint8_t> raw(count * bytes_per_sample);
  in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
  if (in.gcount() != static_cast<std::streamsize>(raw.size())) {
    throw ParseError("PGM: truncated sample data");
  }
  for (std::size_t i = 0; i < count; ++i) {
    const unsigned sample = bytes_per_sample == 1
                                ? raw[i]
                                : (static_cast<unsigned>(raw[2 * i]) << 8) | raw[2 * i + 1];
    mask.flags[i] = sample > 0 ? 1 : 0;
  }
  return mask;
}

void write_pgm_mask(std::ostream& out, const ForegroundMask& mask) {
  out << "P5\n" << mask.width << ' ' << mask.height << "\n255\n";
  std::vector<std::uint8_t> raw(mask.flags.size());
  for (std::size_t i = 0; i < raw.size(); ++i) raw[i] = mask.flags[i] ? 255 : 0;
  out.write(reinterpret_cast<const char*>(raw.data()),
            static_cast<std::streamsize>(raw.size()));
}

Image read_ppm_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open '" + path.string() + "'");
  return read_ppm(in);
}

void write_ppm_file(const std::filesystem::path& path, const Image& image) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot open '" + path.string() + "' for writing");
  write_ppm(out, image);
  if (!out) throw DataError("failed writing '" + path.string() + "'");
}

ForegroundMask read_pgm_mask_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open '" + path.string() + "'");
  return read_pgm_mask(in);
}

void write_pgm_mask_file(const std::filesystem::path& path, const ForegroundMask& mask) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot open '" + path.string() + "' for writing");
  write_pgm_mask(out, mask);
  if (!out) throw DataError("failed writing '" + path.string() + "'");
}

}  // namespace rdc
