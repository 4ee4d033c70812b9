#include "rdc/descriptor.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

#include "rdc/matrix_io.hpp"

namespace rdc {

namespace {

double srgb_to_linear(std::uint8_t c8) {
  const double c = c8 / 255.0;
  return c <= 0.04045 ? c / 12.92 : std::pow((c + 0.055) / 1.055, 2.4);
}

std::uint8_t v_channel(const Image& image, std::size_t pixel) {
  const std::uint8_t r = image.pixels[3 * pixel];
  const std::uint8_t g = image.pixels[3 * pixel + 1];
  const std::uint8_t b = image.pixels[3 * pixel + 2];
  return std::max({r, g, b});
}

struct SobelResponse {
  double gx = 0.0;
  double gy = 0.0;
};

// 3x3 Sobel on the raw 8-bit channel, borders replicated.
SobelResponse sobel_at(const Image& image, int channel, int x, int y) {
  auto p = [&](int xx, int yy) -> double {
    xx = std::clamp(xx, 0, image.width - 1);
    yy = std::clamp(yy, 0, image.height - 1);
    return image.channel(xx, yy, channel);
  };
  SobelResponse r;
  r.gx = (p(x + 1, y - 1) + 2.0 * p(x + 1, y) + p(x + 1, y + 1)) -
         (p(x - 1, y - 1) + 2.0 * p(x - 1, y) + p(x - 1, y + 1));
  r.gy = (p(x - 1, y + 1) + 2.0 * p(x, y + 1) + p(x + 1, y + 1)) -
         (p(x - 1, y - 1) + 2.0 * p(x, y - 1) + p(x + 1, y - 1));
  return r;
}

double orientation(const SobelResponse& r) {
  // atan2(0, 0) is implementation-defined; pin it to 0.
  if (r.gx == 0.0 && r.gy == 0.0) return 0.0;
  return std::atan2(r.gy, r.gx);
}

}  // namespace

std::array<double, 3> rgb_to_hsv(std::uint8_t r8, std::uint8_t g8, std::uint8_t b8) {
  const double r = r8 / 255.0;
  const double g = g8 / 255.0;
  const double b = b8 / 255.0;
  const double v = std::max({r, g, b});
  const double delta = v - std::min({r, g, b});
  double h = 0.0;
  if (delta > 0.0) {
    if (v == r) {
      h = (g - b) / delta;
    } else if (v == g) {
      h = (b - r) / delta + 2.0;
    } else {
      h = (r - g) / delta + 4.0;
    }
    h /= 6.0;
    if (h < 0.0) h += 1.0;
    if (h >= 1.0) h -= 1.0;
  }
  const double s = v > 0.0 ? delta / v : 0.0;
  return {h, s, v};
}

std::array<double, 3> rgb_to_cielab(std::uint8_t r8, std::uint8_t g8, std::uint8_t b8) {
  const double r = srgb_to_linear(r8);
  const double g = srgb_to_linear(g8);
  const double b = srgb_to_linear(b8);
  // sRGB primaries, D65 white. The white point is the row sum of the matrix
  // so that RGB white lands exactly on (1,1,1) and L stays within [0,100].
  const double x = 0.4124564 * r + 0.3575761 * g + 0.1804375 * b;
  const double y = 0.2126729 * r + 0.7151522 * g + 0.0721750 * b;
  const double z = 0.0193339 * r + 0.1191920 * g + 0.9503041 * b;
  constexpr double xn = 0.4124564 + 0.3575761 + 0.1804375;
  constexpr double yn = 0.2126729 + 0.7151522 + 0.0721750;
  constexpr double zn = 0.0193339 + 0.1191920 + 0.9503041;
  auto f = [](double t) {
    constexpr double cube = 216.0 / 24389.0;  // (6/29)^3
    return t > cube ? std::cbrt(t) : (24389.0 / 27.0 * t + 16.0) / 116.0;
  };
  const double fx = f(x / xn);
  const double fy = f(y / yn);
  const double fz = f(z / zn);
  return {116.0 * fy - 16.0, 500.0 * (fx - fy), 200.0 * (fy - fz)};
}

std::array<double, 256> v_channel_cdf(const Image& image) {
  std::array<std::uint64_t, 256> histogram{};
  const std::size_t count = static_cast<std::size_t>(image.width) * image.height;
  for (std::size_t i = 0; i < count; ++i) ++histogram[v_channel(image, i)];
  std::array<double, 256> cdf{};
  std::uint64_t running = 0;
  for (int v = 0; v < 256; ++v) {
    running += histogram[v];
    cdf[v] = static_cast<double>(running) / static_cast<double>(count);
  }
  return cdf;
}

std::vector<double> histogram_equalize_v(const Image& image) {
  const auto cdf = v_channel_cdf(image);
  const std::size_t count = static_cast<std::size_t>(image.width) * image.height;
  std::vector<double> plane(count);
  for (std::size_t i = 0; i < count; ++i) plane[i] = cdf[v_channel(image, i)];
  return plane;
}

GradientField gradients(const Image& image) {
  GradientField field;
  field.width = image.width;
  field.height = image.height;
  const std::size_t count = static_cast<std::size_t>(image.width) * image.height;
  for (int c = 0; c < 3; ++c) {
    field.magnitude[c].resize(count);
    field.orientation[c].resize(count);
  }
  for (int y = 0; y < image.height; ++y) {
    for (int x = 0; x < image.width; ++x) {
      const std::size_t i = static_cast<std::size_t>(y) * image.width + x;
      for (int c = 0; c < 3; ++c) {
        const SobelResponse r = sobel_at(image, c, x, y);
        field.magnitude[c][i] = std::sqrt(r.gx * r.gx + r.gy * r.gy);
        field.orientation[c][i] = orientation(r);
      }
    }
  }
  return field;
}

Eigen::MatrixXd extract_features(const Image& image, const ForegroundMask& mask) {
  if (image.width != mask.width || image.height != mask.height) {
    throw DimensionMismatch("mask dimensions do not match the image");
  }
  const long count = mask.foreground_count();
  if (count < kMinForegroundPixels) {
    throw TooFewForegroundPixels("mask has " + std::to_string(count) +
                                 " foreground pixels; need at least " +
                                 std::to_string(kMinForegroundPixels));
  }
  const auto cdf = v_channel_cdf(image);
  Eigen::MatrixXd features(count, kFeatureDim);
  Eigen::Index row = 0;
  for (int y = 0; y < image.height; ++y) {
    for (int x = 0; x < image.width; ++x) {
      if (!mask.foreground(x, y)) continue;
      const std::size_t pixel = static_cast<std::size_t>(y) * image.width + x;
      const std::uint8_t r = image.pixels[3 * pixel];
      const std::uint8_t g = image.pixels[3 * pixel + 1];
      const std::uint8_t b = image.pixels[3 * pixel + 2];
      const auto hsv = rgb_to_hsv(r, g, b);
      const auto lab = rgb_to_cielab(r, g, b);
      features(row, 0) = x;
      features(row, 1) = y;
      features(row, 2) = hsv[0];
      features(row, 3) = hsv[1];
      features(row, 4) = cdf[v_channel(image, pixel)];
      features(row, 5) = lab[0];
      features(row, 6) = lab[1];
      features(row, 7) = lab[2];
      for (int c = 0; c < 3; ++c) {
        const SobelResponse resp = sobel_at(image, c, x, y);
        features(row, 8 + c) = std::sqrt(resp.gx * resp.gx + resp.gy * resp.gy);
        features(row, 11 + c) = orientation(resp);
      }
      ++row;
    }
  }
  return features;
}

CovarianceDescriptor covariance(const Eigen::MatrixXd& samples, double eps) {
  const Eigen::Index n = samples.rows();
  const Eigen::Index d = samples.cols();
  if (n < 2) {
    throw TooFewSamples("covariance needs at least 2 samples, got " + std::to_string(n));
  }
  if (!(eps >= 0.0) || !std::isfinite(eps)) {
    throw DataError("covariance regularization must be a finite nonnegative value");
  }
  // Two passes with a fixed row order keep the result independent of any
  // caller-side parallelism and reproducible bit for bit.
  Eigen::VectorXd mean = Eigen::VectorXd::Zero(d);
  for (Eigen::Index i = 0; i < n; ++i) mean += samples.row(i).transpose();
  mean /= static_cast<double>(n);
  Eigen::MatrixXd scatter = Eigen::MatrixXd::Zero(d, d);
  Eigen::VectorXd dev(d);
  for (Eigen::Index i = 0; i < n; ++i) {
    dev = samples.row(i).transpose() - mean;
    for (Eigen::Index a = 0; a < d; ++a) {
      for (Eigen::Index b = 0; b <= a; ++b) {
        scatter(a, b) += dev(a) * dev(b);
      }
    }
  }
  Eigen::MatrixXd cov(d, d);
  for (Eigen::Index a = 0; a < d; ++a) {
    for (Eigen::Index b = 0; b <= a; ++b) {
      const double value = scatter(a, b) / static_cast<double>(n - 1);
      cov(a, b) = value;
      cov(b, a) = value;
    }
    cov(a, a) += eps;
  }
  try {
    return {SpdMatrix::validate(cov), n};
  } catch (const NotPositiveDefinite&) {
    throw ValidationFailure("covariance plus " + format_sig17(eps) +
                            " * I is not positive definite; increase the regularization");
  }
}

CovarianceDescriptor describe(const Image& image, const ForegroundMask& mask, double eps) {
  return covariance(extract_features(image, mask), eps);
}

void write_cov(std::ostream& out, const CovarianceDescriptor& descriptor) {
  out << "# pixels=" << descriptor.pixel_count << '\n';
  write_matrix(out, descriptor.matrix.values());
}

CovarianceDescriptor read_cov(std::istream& in) {
  std::stringstream buffer;
  buffer << in.rdbuf();
  long pixels = 0;
  std::istringstream scan(buffer.str());
  std::string line;
  while (std::getline(scan, line)) {
    const std::size_t pos = line.find_first_not_of(" \t\r");
    if (pos == std::string::npos || line[pos] != '#') continue;
    const std::size_t key = line.find("pixels=", pos);
    if (key == std::string::npos) continue;
    try {
      pixels = std::stol(line.substr(key + 7));
    } catch (const std::exception&) {
      throw ParseError("descriptor file: malformed pixels comment '" + line + "'");
    }
    break;
  }
  buffer.clear();
  buffer.seekg(0);
  const Eigen::MatrixXd m = read_matrix(buffer);
  if (m.rows() != m.cols()) {
    throw ParseError("descriptor file: matrix is not square");
  }
  return {SpdMatrix::validate(m), pixels};
}

void write_cov_file(const std::filesystem::path& path, const CovarianceDescriptor& descriptor) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot open '" + path.string() + "' for writing");
  write_cov(out, descriptor);
  if (!out) throw DataError("failed writing '" + path.string() + "'");
}

CovarianceDescriptor read_cov_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open '" + path.string() + "'");
  try {
    return read_cov(in);
  } catch (const DataError& e) {
    throw DataError("'" + path.string() + "': " + e.what());
  }
}

}  // namespace rdc
