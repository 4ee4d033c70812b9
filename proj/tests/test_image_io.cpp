#include <doctest.h>

#include <sstream>
#include <string>

#include "rdc/image.hpp"
#include "rdc/rng.hpp"

using namespace rdc;

namespace {

Image tiny_image() {
  Image image;
  image.width = 3;
  image.height = 2;
  image.pixels = {10, 20, 30, 40, 50, 60, 70, 80, 90,
                  100, 110, 120, 130, 140, 150, 160, 170, 180};
  return image;
}

}  // namespace

TEST_CASE("PPM round trip") {
  const Image image = tiny_image();
  std::stringstream stream;
  write_ppm(stream, image);
  const Image loaded = read_ppm(stream);
  CHECK(loaded.width == 3);
  CHECK(loaded.height == 2);
  CHECK(loaded.pixels == image.pixels);
}

TEST_CASE("PPM header comments are skipped") {
  std::stringstream stream;
  stream << "P6\n# a comment\n2 1\n# another\n255\n";
  stream.write("\x01\x02\x03\x04\x05\x06", 6);
  const Image image = read_ppm(stream);
  CHECK(image.width == 2);
  CHECK(image.pixels[5] == 6);
}

TEST_CASE("PPM rejects wrong magic, maxval, and truncation") {
  {
    std::stringstream stream("P5\n2 2\n255\n");
    CHECK_THROWS_AS((void)read_ppm(stream), ParseError);
  }
  {
    std::stringstream stream;
    stream << "P6\n2 1\n65535\n";
    stream.write("\0\0\0\0\0\0\0\0\0\0\0\0", 12);
    CHECK_THROWS_AS((void)read_ppm(stream), ParseError);
  }
  {
    std::stringstream stream;
    stream << "P6\n2 2\n255\n";
    stream.write("\x01\x02\x03", 3);
    CHECK_THROWS_AS((void)read_ppm(stream), ParseError);
  }
  {
    std::stringstream stream("P6\n0 4\n255\n");
    CHECK_THROWS_AS((void)read_ppm(stream), ParseError);
  }
}

TEST_CASE("PGM masks: binary, ASCII, and 16-bit samples") {
  SUBCASE("P5 single byte") {
    std::stringstream stream;
    stream << "P5\n3 1\n255\n";
    stream.write("\x00\x01\xFF", 3);
    const ForegroundMask mask = read_pgm_mask(stream);
    CHECK(mask.foreground_count() == 2);
    CHECK_FALSE(mask.foreground(0, 0));
    CHECK(mask.foreground(1, 0));
    CHECK(mask.foreground(2, 0));
  }
  SUBCASE("P2 ASCII") {
    std::stringstream stream("P2\n# comment\n2 2\n9\n0 3\n9 0\n");
    const ForegroundMask mask = read_pgm_mask(stream);
    CHECK(mask.foreground_count() == 2);
    CHECK(mask.foreground(1, 0));
    CHECK(mask.foreground(0, 1));
  }
  SUBCASE("P5 two-byte big-endian") {
    std::stringstream stream;
    stream << "P5\n2 1\n65535\n";
    stream.write("\x00\x00\x01\x00", 4);
    const ForegroundMask mask = read_pgm_mask(stream);
    CHECK_FALSE(mask.foreground(0, 0));
    CHECK(mask.foreground(1, 0));
  }
}

TEST_CASE("PGM mask round trip") {
  ForegroundMask mask;
  mask.width = 4;
  mask.height = 2;
  mask.flags = {1, 0, 1, 0, 0, 1, 0, 1};
  std::stringstream stream;
  write_pgm_mask(stream, mask);
  const ForegroundMask loaded = read_pgm_mask(stream);
  CHECK(loaded.flags == mask.flags);
}

TEST_CASE("all_foreground covers every pixel") {
  const auto mask = ForegroundMask::all_foreground(7, 3);
  CHECK(mask.foreground_count() == 21);
}
