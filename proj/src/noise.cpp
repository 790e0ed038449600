#include "schro/noise.hpp"

#include <cmath>
#include <stdexcept>

#include "schro/rng.hpp"

namespace schro {

GreyImage add_gaussian_noise(const GreyImage& image, double sigma, std::uint64_t seed) {
  if (!(sigma >= 0) || !std::isfinite(sigma))
    throw std::invalid_argument("add_gaussian_noise: sigma must be finite, >= 0");
  Rng rng(seed);
  GreyImage out(image.height(), image.width());
  for (Eigen::Index y = 0; y < image.height(); ++y) {
    for (Eigen::Index x = 0; x < image.width(); ++x) {
      const double v = static_cast<double>(image.pixels(y, x)) + rng.normal(0.0, sigma);
      const long r = std::lround(v);
      out.pixels(y, x) = static_cast<std::uint8_t>(r < 0 ? 0 : (r > 255 ? 255 : r));
    }
  }
  return out;
}

GreyImage add_salt_pepper(const GreyImage& image, double p, std::uint64_t seed) {
  if (!(p >= 0.0 && p <= 1.0))
    throw std::invalid_argument("add_salt_pepper: p must be in [0, 1]");
  Rng rng(seed);
  GreyImage out = image;
  for (Eigen::Index y = 0; y < image.height(); ++y) {
    for (Eigen::Index x = 0; x < image.width(); ++x) {
      if (rng.uniform() < p)
        out.pixels(y, x) = rng.uniform() < 0.5 ? 0 : 255;
    }
  }
  return out;
}

GreyImage apply_noise(const GreyImage& image, const NoiseSpec& spec) {
  switch (spec.kind) {
    case NoiseKind::gaussian: return add_gaussian_noise(image, spec.level, spec.seed);
    case NoiseKind::salt_pepper: return add_salt_pepper(image, spec.level, spec.seed);
  }
  throw std::invalid_argument("apply_noise: unknown noise kind");
}

}  // namespace schro
