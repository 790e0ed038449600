#pragma once

#include <cstdint>

#include "schro/image.hpp"

namespace schro {

enum class NoiseKind { gaussian, salt_pepper };

// Noise description: for gaussian, level is sigma in intensity units; for
// salt & pepper, level is the per-pixel corruption probability in [0, 1].
struct NoiseSpec {
  NoiseKind kind = NoiseKind::gaussian;
  double level = 0;
  std::uint64_t seed = 0;
};

// pixel' = clamp(round(pixel + N(0, sigma^2)), 0, 255), independent draws.
GreyImage add_gaussian_noise(const GreyImage& image, double sigma, std::uint64_t seed);

// Each pixel is corrupted with probability p; corrupted pixels become 0 or
// 255 with equal probability.
GreyImage add_salt_pepper(const GreyImage& image, double p, std::uint64_t seed);

GreyImage apply_noise(const GreyImage& image, const NoiseSpec& spec);

}  // namespace schro
