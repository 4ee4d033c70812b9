#pragma once

#include <Eigen/Core>
#include <array>
#include <filesystem>
#include <iosfwd>
#include <vector>

#include "rdc/image.hpp"
#include "rdc/spd_matrix.hpp"

namespace rdc {

/// Per-pixel feature dimension. Column order of the feature matrix:
///   0 x   1 y   2 H   3 S   4 V(equalized)   5 L   6 a   7 b
///   8..10 gradient magnitude (R, G, B)   11..13 gradient orientation (R, G, B)
inline constexpr int kFeatureDim = 14;

/// Minimum foreground pixels for a well-posed 14x14 covariance.
inline constexpr long kMinForegroundPixels = 15;

/// Default identity shrinkage added to the sample covariance.
inline constexpr double kDefaultCovarianceEps = 1e-5;

/// Covariance of per-pixel features over a foreground region, plus the
/// number of samples behind the estimate. pixel_count is 0 when the matrix
/// did not come from pixels (synthetic data, files without the count).
struct CovarianceDescriptor {
  SpdMatrix matrix;
  long pixel_count = 0;
};

/// Hexcone HSV from 8-bit RGB; H in [0,1), S and V in [0,1].
std::array<double, 3> rgb_to_hsv(std::uint8_t r, std::uint8_t g, std::uint8_t b);

/// CIELAB from 8-bit sRGB (D65 white point). L in [0,100].
std::array<double, 3> rgb_to_cielab(std::uint8_t r, std::uint8_t g, std::uint8_t b);

/// Inclusive CDF of the 256-bin histogram of the V channel (max of R,G,B),
/// taken over the whole image. cdf[v] is the fraction of pixels with V <= v.
std::array<double, 256> v_channel_cdf(const Image& image);

/// Histogram-equalized V channel in [0,1], one value per pixel, row-major.
std::vector<double> histogram_equalize_v(const Image& image);

/// 3x3 Sobel responses per RGB channel, row-major planes. Borders use edge
/// replication; orientation is atan2(gy, gx) in (-pi, pi], defined as 0
/// where both responses vanish.
struct GradientField {
  int width = 0;
  int height = 0;
  std::array<std::vector<double>, 3> magnitude;
  std::array<std::vector<double>, 3> orientation;
};
GradientField gradients(const Image& image);

/// One kFeatureDim-entry row per foreground pixel, visited in row-major
/// order. Throws DimensionMismatch or TooFewForegroundPixels.
Eigen::MatrixXd extract_features(const Image& image, const ForegroundMask& mask);

/// Sample covariance (N-1 denominator) of the rows of `samples`, shrunk by
/// eps * I and validated as SPD. Throws TooFewSamples for N < 2 and
/// ValidationFailure when the shrunken matrix still fails the PD check.
CovarianceDescriptor covariance(const Eigen::MatrixXd& samples, double eps);

/// Full descriptor pipeline: extract_features then covariance.
CovarianceDescriptor describe(const Image& image, const ForegroundMask& mask,
                              double eps = kDefaultCovarianceEps);

/// Descriptor interchange: the matrix text format preceded by a
/// "# pixels=N" comment line.
void write_cov(std::ostream& out, const CovarianceDescriptor& descriptor);
CovarianceDescriptor read_cov(std::istream& in);
void write_cov_file(const std::filesystem::path& path, const CovarianceDescriptor& descriptor);
CovarianceDescriptor read_cov_file(const std::filesystem::path& path);

}  // namespace rdc
