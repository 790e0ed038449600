#pragma once

#include <Eigen/Core>

#include <stdexcept>

#include "schro/image.hpp"
#include "schro/transform.hpp"

namespace schro {

// Normalized value distribution of a transform field: equal-width bins over
// the field's min-max range, mass summing to 1.
template <typename Scalar>
struct Histogram {
  Eigen::ArrayX<Scalar> bin_centers;
  Eigen::ArrayX<Scalar> mass;

  Eigen::Index bin_count() const { return mass.size(); }
};

template <typename Derived>
Histogram<typename Derived::Scalar> histogram(const Eigen::ArrayBase<Derived>& field,
                                              Eigen::Index bins) {
  using Scalar = typename Derived::Scalar;
  if (bins < 1) throw std::invalid_argument("histogram: bins must be >= 1");
  decltype(auto) values = field.derived().eval();
  const Eigen::Index count = values.size();
  if (count < 1) throw std::invalid_argument("histogram: empty field");

  const Scalar lo = values.minCoeff();
  const Scalar hi = values.maxCoeff();

  Histogram<Scalar> h;
  h.mass = Eigen::ArrayX<Scalar>::Zero(bins);
  h.bin_centers.resize(bins);

  if (hi > lo) {
    const Scalar width = (hi - lo) / static_cast<Scalar>(bins);
    for (Eigen::Index b = 0; b < bins; ++b)
      h.bin_centers[b] = lo + (static_cast<Scalar>(b) + Scalar(0.5)) * width;
    const auto flat = values.reshaped();
    for (Eigen::Index i = 0; i < count; ++i) {
      Eigen::Index b = static_cast<Eigen::Index>((flat[i] - lo) / width);
      if (b >= bins) b = bins - 1;  // the maximum lands in the last bin
      h.mass[b] += Scalar(1);
    }
    h.mass /= static_cast<Scalar>(count);
  } else {
    // Degenerate range: all mass in the first bin, all centers at the value.
    h.bin_centers.setConstant(lo);
    h.mass[0] = Scalar(1);
  }
  return h;
}

// Central moments mu^m, m = 1..order, of a normalized histogram about its
// distribution mean.
template <typename Scalar>
Eigen::ArrayX<Scalar> central_moments(const Histogram<Scalar>& h, int order) {
  if (order < 1) throw std::invalid_argument("central_moments: order must be >= 1");
  if (h.mass.size() < 1 || h.mass.size() != h.bin_centers.size())
    throw std::invalid_argument("central_moments: malformed histogram");

  const Scalar mean = (h.bin_centers * h.mass).sum();
  const Eigen::ArrayX<Scalar> dev = h.bin_centers - mean;

  Eigen::ArrayX<Scalar> moments(order);
  Eigen::ArrayX<Scalar> power = dev;
  for (int m = 1; m <= order; ++m) {
    moments[m - 1] = (power * h.mass).sum();
    if (m < order) power *= dev;
  }
  return moments;
}

// Parameters of the moment descriptor: kernel radius, number of moments per
// t, histogram bins, and the t sweep t_i = i * t_step for i = 1..t_count.
struct DescriptorParams {
  int radius = 6;
  int moments = 5;
  Eigen::Index bins = 256;
  double t_step = 1e-6;
  int t_count = 100;

  void validate() const {
    if (radius < 1) throw std::invalid_argument("descriptor: radius must be >= 1");
    if (moments < 1) throw std::invalid_argument("descriptor: moments must be >= 1");
    if (bins < 1) throw std::invalid_argument("descriptor: bins must be >= 1");
    if (!(t_step > 0)) throw std::invalid_argument("descriptor: t_step must be > 0");
    if (t_count < 1) throw std::invalid_argument("descriptor: t_count must be >= 1");
  }
};

struct Descriptor {
  Eigen::VectorXd values;  // t-major: all moments of t_1, then t_2, ...
  DescriptorParams params;
};

// Concatenated central moments of the transform over the t sweep. The
// default parameters give the 100 * moments layout with t in
// [1e-6, 1e-4].
inline Descriptor build_descriptor(const GreyImage& image, const DescriptorParams& params = {}) {
  params.validate();
  if (image.width() < 1 || image.height() < 1)
    throw std::invalid_argument("build_descriptor: empty image");

  const Eigen::ArrayXXd pixels = image.to_array();
  Descriptor d;
  d.params = params;
  d.values.resize(static_cast<Eigen::Index>(params.t_count) * params.moments);
  for (int i = 1; i <= params.t_count; ++i) {
    const double t = static_cast<double>(i) * params.t_step;
    const Field2D<double> field = transform_2d(pixels, t, params.radius);
    const Histogram<double> h = histogram(field.values, params.bins);
    d.values.segment(static_cast<Eigen::Index>(i - 1) * params.moments, params.moments) =
        central_moments(h, params.moments).matrix();
  }
  return d;
}

}  // namespace schro
