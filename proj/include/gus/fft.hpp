#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace gus {

/// Iterative radix-2 complex FFT for power-of-two sizes.
/// Quadrature grids in this project are powers of two by construction,
/// so a specialized kernel with precomputed twiddles is all we need.
class Fft {
 public:
  using cd = std::complex<double>;

  explicit Fft(std::size_t n) : n_(n) {
    if (n == 0 || (n & (n - 1)) != 0)
      throw std::invalid_argument("Fft: size must be a power of two");
    twiddle_.resize(n / 2);
    const double step = -2.0 * pi() / static_cast<double>(n);
    for (std::size_t k = 0; k < n / 2; ++k)
      twiddle_[k] = std::polar(1.0, step * static_cast<double>(k));
    bitrev_.resize(n);
    std::size_t log2n = 0;
    while ((std::size_t{1} << log2n) < n) ++log2n;
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t r = 0;
      for (std::size_t b = 0; b < log2n; ++b)
        if (i & (std::size_t{1} << b)) r |= std::size_t{1} << (log2n - 1 - b);
      bitrev_[i] = r;
    }
  }

  std::size_t size() const { return n_; }

  /// In-place forward transform: X_k = sum_j x_j e^{-2pi i jk/n}.
  void forward(cd* x) const { run(x, false); }

  /// In-place inverse transform WITHOUT the 1/n factor:
  /// x_j = sum_k X_k e^{+2pi i jk/n}.
  void inverse_unscaled(cd* x) const { run(x, true); }

  static double pi() { return 3.14159265358979323846264338327950288; }

 private:
  void run(cd* x, bool inv) const {
    const std::size_t n = n_;
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t r = bitrev_[i];
      if (i < r) std::swap(x[i], x[r]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
      const std::size_t half = len >> 1;
      const std::size_t stride = n / len;
      for (std::size_t i = 0; i < n; i += len) {
        for (std::size_t j = 0; j < half; ++j) {
          cd w = twiddle_[j * stride];
          if (inv) w = std::conj(w);
          const cd u = x[i + j];
          const cd v = x[i + j + half] * w;
          x[i + j] = u + v;
          x[i + j + half] = u - v;
        }
      }
    }
  }

  std::size_t n_;
  std::vector<cd> twiddle_;
  std::vector<std::size_t> bitrev_;
};

}  // namespace gus
