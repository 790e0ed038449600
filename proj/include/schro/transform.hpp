#pragma once

#include <Eigen/Core>
#include <unsupported/Eigen/FFT>

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>

namespace schro {

// Sampled complex chirp kernel e^{-j t x^2} over integer offsets -r..+r.
// Index i of the arrays corresponds to offset i - radius.
template <typename Scalar>
struct ChirpKernel {
  Scalar t = 0;
  int radius = 0;
  Eigen::ArrayX<Scalar> real_part;  // cos(t x^2)
  Eigen::ArrayX<Scalar> imag_part;  // -sin(t x^2)
};

// Magnitude field produced by a spatial (truncated-kernel) transform.
template <typename Scalar>
struct Field1D {
  Eigen::ArrayX<Scalar> values;
  Scalar t = 0;
  int radius = 0;
};

template <typename Scalar>
struct Field2D {
  Eigen::ArrayXX<Scalar> values;
  Scalar t = 0;
  int radius = 0;
};

// Magnitude field produced by the frequency-domain formulation; carries the
// free constant k instead of a support radius.
template <typename Scalar>
struct FrequencyField {
  Eigen::ArrayXX<Scalar> values;
  Scalar t = 0;
  Scalar k = 0;
};

namespace detail {

template <typename Scalar>
void check_transform_params(Scalar t, int radius) {
  if (!(std::isfinite(static_cast<double>(t)) && t >= Scalar(0)))
    throw std::invalid_argument("transform: t must be finite and non-negative");
  if (radius < 1) throw std::invalid_argument("transform: radius must be >= 1");
}

// Symmetric (mirror) boundary with edge repetition: ...b a | a b c d | d c...
// Valid for any excursion, also when the support is wider than the signal.
inline Eigen::Index mirror_index(Eigen::Index i, Eigen::Index n) {
  const Eigen::Index period = 2 * n;
  i %= period;
  if (i < 0) i += period;
  return i < n ? i : period - 1 - i;
}

// Copies source into dest (length n + 2*radius) with mirrored margins.
template <typename Scalar, typename Access>
void fill_mirrored(Eigen::ArrayX<Scalar>& dest, Eigen::Index n, int radius,
                   Access&& at) {
  for (Eigen::Index j = 0; j < n + 2 * radius; ++j)
    dest[j] = at(mirror_index(j - radius, n));
}

}  // namespace detail

template <typename Scalar>
ChirpKernel<Scalar> make_chirp_kernel(Scalar t, int radius) {
  detail::check_transform_params(t, radius);
  ChirpKernel<Scalar> kernel;
  kernel.t = t;
  kernel.radius = radius;
  const int taps = 2 * radius + 1;
  kernel.real_part.resize(taps);
  kernel.imag_part.resize(taps);
  for (int i = 0; i < taps; ++i) {
    const Scalar x = static_cast<Scalar>(i - radius);
    kernel.real_part[i] = std::cos(t * x * x);
    kernel.imag_part[i] = -std::sin(t * x * x);
  }
  return kernel;
}

// |f * G| with G = e^{-j t x^2} truncated to [-radius, +radius], mirror
// boundary, output length equal to the input length.
template <typename Derived>
Field1D<typename Derived::Scalar> transform_1d(const Eigen::ArrayBase<Derived>& signal,
                                               typename Derived::Scalar t, int radius) {
  using Scalar = typename Derived::Scalar;
  decltype(auto) f = signal.derived().eval();
  const Eigen::Index n = f.size();
  if (n < 1) throw std::invalid_argument("transform_1d: empty signal");
  if (!f.allFinite()) throw std::invalid_argument("transform_1d: non-finite sample");
  const ChirpKernel<Scalar> kernel = make_chirp_kernel(t, radius);

  Eigen::ArrayX<Scalar> padded(n + 2 * radius);
  detail::fill_mirrored(padded, n, radius, [&](Eigen::Index i) { return f[i]; });

  Field1D<Scalar> out;
  out.t = t;
  out.radius = radius;
  out.values.resize(n);
  const int taps = 2 * radius + 1;
  for (Eigen::Index x = 0; x < n; ++x) {
    Scalar re = 0, im = 0;
    for (int i = 0; i < taps; ++i) {
      const Scalar v = padded[x + i];
      re += v * kernel.real_part[i];
      im += v * kernel.imag_part[i];
    }
    out.values[x] = std::sqrt(re * re + im * im);
  }
  return out;
}

// Same contract as transform_1d, evaluated through the expanded real-valued
// development of |f * G|^2 with d_i = f(x-i) + f(x+i). Kept as an independent
// evaluation path for cross-checking the complex convolution.
template <typename Derived>
Field1D<typename Derived::Scalar> transform_1d_expanded(
    const Eigen::ArrayBase<Derived>& signal, typename Derived::Scalar t, int radius) {
  using Scalar = typename Derived::Scalar;
  decltype(auto) f = signal.derived().eval();
  const Eigen::Index n = f.size();
  if (n < 1) throw std::invalid_argument("transform_1d_expanded: empty signal");
  if (!f.allFinite())
    throw std::invalid_argument("transform_1d_expanded: non-finite sample");
  detail::check_transform_params(t, radius);

  // cos(t i^2) for i = 0..r and cos(t (i^2 - j^2)) for 1 <= i < j <= r.
  Eigen::ArrayX<Scalar> cos_i(radius + 1);
  for (int i = 0; i <= radius; ++i)
    cos_i[i] = std::cos(t * static_cast<Scalar>(i) * static_cast<Scalar>(i));
  Eigen::ArrayXX<Scalar> cos_ij(radius + 1, radius + 1);
  for (int i = 1; i <= radius; ++i)
    for (int j = i + 1; j <= radius; ++j)
      cos_ij(i, j) = std::cos(t * static_cast<Scalar>(i * i - j * j));

  Eigen::ArrayX<Scalar> padded(n + 2 * radius);
  detail::fill_mirrored(padded, n, radius, [&](Eigen::Index i) { return f[i]; });

  Field1D<Scalar> out;
  out.t = t;
  out.radius = radius;
  out.values.resize(n);
  Eigen::ArrayX<Scalar> d(radius + 1);
  for (Eigen::Index x = 0; x < n; ++x) {
    const Scalar fx = padded[x + radius];
    for (int i = 1; i <= radius; ++i)
      d[i] = padded[x + radius - i] + padded[x + radius + i];
    Scalar acc = fx * fx;
    for (int i = 1; i <= radius; ++i) {
      Scalar inner = cos_i[i] * fx + Scalar(0.5) * d[i];
      for (int j = i + 1; j <= radius; ++j) inner += cos_ij(i, j) * d[j];
      acc += Scalar(2) * d[i] * inner;
    }
    out.values[x] = std::sqrt(std::max(acc, Scalar(0)));
  }
  return out;
}

// 2D transform with the separable kernel e^{-j t (x^2 + y^2)}: rows then
// columns in complex arithmetic, magnitude taken once at the end.
template <typename Derived>
Field2D<typename Derived::Scalar> transform_2d(const Eigen::ArrayBase<Derived>& image,
                                               typename Derived::Scalar t, int radius) {
  using Scalar = typename Derived::Scalar;
  decltype(auto) img = image.derived().eval();
  const Eigen::Index rows = img.rows();
  const Eigen::Index cols = img.cols();
  if (rows < 1 || cols < 1) throw std::invalid_argument("transform_2d: empty image");
  if (!img.allFinite()) throw std::invalid_argument("transform_2d: non-finite pixel");
  const ChirpKernel<Scalar> kernel = make_chirp_kernel(t, radius);
  const int taps = 2 * radius + 1;

  // Horizontal pass: real input, complex output planes.
  Eigen::ArrayXX<Scalar> row_re(rows, cols), row_im(rows, cols);
  Eigen::ArrayX<Scalar> padded(std::max(rows, cols) + 2 * radius);
  for (Eigen::Index y = 0; y < rows; ++y) {
    detail::fill_mirrored(padded, cols, radius,
                          [&](Eigen::Index i) { return img(y, i); });
    for (Eigen::Index x = 0; x < cols; ++x) {
      Scalar re = 0, im = 0;
      for (int i = 0; i < taps; ++i) {
        const Scalar v = padded[x + i];
        re += v * kernel.real_part[i];
        im += v * kernel.imag_part[i];
      }
      row_re(y, x) = re;
      row_im(y, x) = im;
    }
  }

  // Vertical pass on the complex planes.
  Field2D<Scalar> out;
  out.t = t;
  out.radius = radius;
  out.values.resize(rows, cols);
  Eigen::ArrayX<Scalar> pad_re(rows + 2 * radius), pad_im(rows + 2 * radius);
  for (Eigen::Index x = 0; x < cols; ++x) {
    detail::fill_mirrored(pad_re, rows, radius,
                          [&](Eigen::Index i) { return row_re(i, x); });
    detail::fill_mirrored(pad_im, rows, radius,
                          [&](Eigen::Index i) { return row_im(i, x); });
    for (Eigen::Index y = 0; y < rows; ++y) {
      Scalar re = 0, im = 0;
      for (int i = 0; i < taps; ++i) {
        const Scalar ar = pad_re[y + i];
        const Scalar ai = pad_im[y + i];
        const Scalar kr = kernel.real_part[i];
        const Scalar ki = kernel.imag_part[i];
        re += ar * kr - ai * ki;
        im += ar * ki + ai * kr;
      }
      out.values(y, x) = std::sqrt(re * re + im * im);
    }
  }
  return out;
}

namespace detail {

// Signed frequency of DFT bin u on an axis of length n, i.e. the offset from
// the centre bin floor(n/2) after an fftshift.
inline Eigen::Index signed_frequency(Eigen::Index u, Eigen::Index n) {
  const Eigen::Index half = n / 2;
  return (u + half) % n - half;
}

template <typename Scalar>
void dft_rows(Eigen::FFT<Scalar>& fft,
              Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic>& m,
              bool inverse) {
  using CVec = Eigen::Vector<std::complex<Scalar>, Eigen::Dynamic>;
  CVec in(m.cols()), outv(m.cols());
  for (Eigen::Index y = 0; y < m.rows(); ++y) {
    in = m.row(y).transpose();
    if (inverse)
      fft.inv(outv, in);
    else
      fft.fwd(outv, in);
    m.row(y) = outv.transpose();
  }
}

template <typename Scalar>
void dft_cols(Eigen::FFT<Scalar>& fft,
              Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic>& m,
              bool inverse) {
  using CVec = Eigen::Vector<std::complex<Scalar>, Eigen::Dynamic>;
  CVec in(m.rows()), outv(m.rows());
  for (Eigen::Index x = 0; x < m.cols(); ++x) {
    in = m.col(x);
    if (inverse)
      fft.inv(outv, in);
    else
      fft.fwd(outv, in);
    m.col(x) = outv;
  }
}

}  // namespace detail

// Frequency formulation: S = |IDFT2( e^{-j k d t} . DFT2(I) )| where d is the
// squared distance from the centre of the (shifted) spectrum,
// d_uv = (u - m/2)^2 + (v - n/2)^2 with centre floor(m/2), floor(n/2).
template <typename Derived>
FrequencyField<typename Derived::Scalar> transform_frequency(
    const Eigen::ArrayBase<Derived>& image, typename Derived::Scalar t,
    typename Derived::Scalar k) {
  using Scalar = typename Derived::Scalar;
  using Complex = std::complex<Scalar>;
  decltype(auto) img = image.derived().eval();
  const Eigen::Index rows = img.rows();
  const Eigen::Index cols = img.cols();
  if (rows < 1 || cols < 1)
    throw std::invalid_argument("transform_frequency: empty image");
  if (!img.allFinite())
    throw std::invalid_argument("transform_frequency: non-finite pixel");
  if (!(std::isfinite(static_cast<double>(t)) && t >= Scalar(0)))
    throw std::invalid_argument("transform_frequency: t must be finite, >= 0");
  if (!std::isfinite(static_cast<double>(k)))
    throw std::invalid_argument("transform_frequency: k must be finite");

  Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic> spec(rows, cols);
  for (Eigen::Index y = 0; y < rows; ++y)
    for (Eigen::Index x = 0; x < cols; ++x) spec(y, x) = Complex(img(y, x), 0);

  Eigen::FFT<Scalar> fft;
  detail::dft_rows(fft, spec, false);
  detail::dft_cols(fft, spec, false);

  for (Eigen::Index u = 0; u < rows; ++u) {
    const Scalar cu = static_cast<Scalar>(detail::signed_frequency(u, rows));
    for (Eigen::Index v = 0; v < cols; ++v) {
      const Scalar cv = static_cast<Scalar>(detail::signed_frequency(v, cols));
      const Scalar phase = k * (cu * cu + cv * cv) * t;
      spec(u, v) *= Complex(std::cos(phase), -std::sin(phase));
    }
  }

  detail::dft_cols(fft, spec, true);
  detail::dft_rows(fft, spec, true);

  FrequencyField<Scalar> out;
  out.t = t;
  out.k = k;
  out.values.resize(rows, cols);
  for (Eigen::Index y = 0; y < rows; ++y)
    for (Eigen::Index x = 0; x < cols; ++x) out.values(y, x) = std::abs(spec(y, x));
  return out;
}

}  // namespace schro
