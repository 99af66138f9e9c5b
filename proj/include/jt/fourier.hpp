#pragma once

// Two-dimensional discrete Fourier transform on an n x n periodic grid.
//
// Convention: forward uses the kernel exp(-i p.q) summed over grid indices,
// inverse carries the 1/n^2 normalisation, so inverse(forward(f)) == f.
// Storage is row-major (row = fixed y index) and the momentum index follows
// the FFT order 0, 1, ..., n/2-1, -n/2, ..., -1. The constant phase
// exp(i p L) arising from the grid origin at -L is not applied: every
// momentum-space operation in this library is diagonal in p.

#include <complex>
#include <cstddef>
#include <memory>
#include <span>

namespace jt {

class FourierTransform {
 public:
  explicit FourierTransform(std::size_t n);
  ~FourierTransform();

  FourierTransform(const FourierTransform&) = delete;
  FourierTransform& operator=(const FourierTransform&) = delete;
  FourierTransform(FourierTransform&&) noexcept;
  FourierTransform& operator=(FourierTransform&&) noexcept;

  std::size_t n() const noexcept { return n_; }

  /// In place. Data must be 16-byte aligned and hold n*n values.
  void forward(std::span<std::complex<double>> data) const;
  /// In place, normalised by 1/n^2.
  void inverse(std::span<std::complex<double>> data) const;
  /// In place, without the 1/n^2 factor.
  void inverse_unnormalized(std::span<std::complex<double>> data) const;

 private:
  struct Plans;
  std::size_t n_;
  std::unique_ptr<Plans> plans_;
};

/// Process-wide transform for size n, created on first use. Thread safe.
const FourierTransform& fourier(std::size_t n);

}  // namespace jt
