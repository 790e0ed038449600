#pragma once

#include <Eigen/Core>

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>

namespace schro {

// 8-bit grey-level raster, row-major (row = y, col = x).
using PixelMatrix =
    Eigen::Matrix<std::uint8_t, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

struct GreyImage {
  PixelMatrix pixels;

  GreyImage() = default;
  GreyImage(Eigen::Index height, Eigen::Index width)
      : pixels(PixelMatrix::Zero(height, width)) {}

  Eigen::Index width() const { return pixels.cols(); }
  Eigen::Index height() const { return pixels.rows(); }
  Eigen::Index size() const { return pixels.size(); }

  bool operator==(const GreyImage& other) const { return pixels == other.pixels; }

  // Promote raw grey values to a floating array, no rescaling.
  template <typename Scalar = double>
  Eigen::ArrayXX<Scalar> to_array() const {
    return pixels.template cast<Scalar>().array();
  }
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Decodes a PNG or binary PGM (P5) file; colour inputs are reduced with the
// BT.601 luminance weights 0.299 R + 0.587 G + 0.114 B and rounded to the
// nearest integer. Throws IoError with the path in the message on failure.
GreyImage load_grey_image(const std::filesystem::path& path);

GreyImage read_pgm(const std::filesystem::path& path);
void write_pgm(const std::filesystem::path& path, const GreyImage& image);

GreyImage read_png(const std::filesystem::path& path);

// Min-max scales an arbitrary real field to the 0..255 grey range; a constant
// field maps to all zeros.
GreyImage image_from_field(const Eigen::ArrayXXd& field);

inline std::uint8_t luminance_to_grey(double r, double g, double b) {
  const double y = 0.299 * r + 0.587 * g + 0.114 * b;
  const long v = std::lround(y);
  return static_cast<std::uint8_t>(v < 0 ? 0 : (v > 255 ? 255 : v));
}

}  // namespace schro
