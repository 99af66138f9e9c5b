#pragma once

// Uniform periodic 2D grids, two-channel complex fields on them and the
// field-level observables.

#include <array>
#include <complex>
#include <cstddef>
#include <vector>

#include "jt/aligned.hpp"
#include "jt/model.hpp"

namespace jt {

/// Square periodic grid. Positions run over [-L, L) with spacing 2L/n; the
/// conjugate momenta have spacing pi/L and cover [-pi/spacing, pi/spacing).
/// Arrays over the grid are row-major with the row index along y.
class Grid2D {
 public:
  /// Requires n >= 8, n a power of two, extent > 0.
  Grid2D(std::size_t n, double extent);

  std::size_t n() const noexcept { return n_; }
  std::size_t size() const noexcept { return n_ * n_; }
  double extent() const noexcept { return extent_; }
  double spacing() const noexcept { return spacing_; }
  double momentum_spacing() const noexcept { return dp_; }
  double cell_area() const noexcept { return spacing_ * spacing_; }

  double position(std::size_t i) const noexcept {
    return -extent_ + spacing_ * static_cast<double>(i);
  }
  /// Momentum of FFT-ordered index i.
  double momentum(std::size_t i) const noexcept {
    const auto half = static_cast<std::ptrdiff_t>(n_ / 2);
    auto m = static_cast<std::ptrdiff_t>(i);
    if (m >= half) m -= static_cast<std::ptrdiff_t>(n_);
    return dp_ * static_cast<double>(m);
  }
  /// Momentum of the i-th point in natural (increasing) order.
  double momentum_natural(std::size_t i) const noexcept {
    return dp_ * (static_cast<double>(i) - static_cast<double>(n_ / 2));
  }
  /// Maps a natural-order momentum index to its FFT-order index.
  std::size_t fft_index(std::size_t natural) const noexcept {
    return (natural + n_ / 2) % n_;
  }

  std::size_t index(std::size_t ix, std::size_t iy) const noexcept { return iy * n_ + ix; }

  /// Index of the grid point at the origin.
  std::size_t origin_index() const noexcept { return index(n_ / 2, n_ / 2); }

  friend bool operator==(const Grid2D& a, const Grid2D& b) {
    return a.n_ == b.n_ && a.extent_ == b.extent_;
  }

 private:
  std::size_t n_;
  double extent_;
  double spacing_;
  double dp_;
};

using ComplexArray = aligned_vector<std::complex<double>>;

/// Two diabatic channels sampled on a grid.
struct SpinorField {
  Grid2D grid;
  ComplexArray c1;
  ComplexArray c2;

  explicit SpinorField(const Grid2D& g) : grid(g), c1(g.size()), c2(g.size()) {}
};

enum class Channel { one = 1, two = 2 };
enum class Axis { x, y };

/// Normalised Gaussian (pi sigma^2)^{-1/2} exp(-|q - centre|^2 / (2 sigma^2))
/// in the selected channel. Throws SupportError unless the packet sits at
/// least 5 sigma from every edge.
SpinorField make_gaussian(const Grid2D& grid, Vec2 center, double sigma,
                          Channel channel = Channel::one);

/// Multiplies the field by exp(i p0.q).
void apply_momentum_boost(SpinorField& field, Vec2 p0);

double norm_squared(const SpinorField& field);
double norm(const SpinorField& field);

Vec2 expectation_position(const SpinorField& field);
Vec2 expectation_momentum(const SpinorField& field);

/// Second central moments per axis in position space.
Vec2 position_variance(const SpinorField& field);

/// Position density and momentum density, both row-major over natural-order
/// axes. The momentum density is normalised so that its sum times dp^2
/// equals the squared norm.
struct Densities {
  std::vector<double> position;
  std::vector<double> momentum;
};
Densities densities(const SpinorField& field);

/// Marginal of the position density. `Axis::y` returns P(Qy) = int dQx |psi|^2
/// sampled at the grid y values.
std::vector<double> projected_distribution(const SpinorField& field, Axis axis);

/// (<sx>, <sy>, <sz>) normalised by the squared norm.
std::array<double, 3> spin_expectations(const SpinorField& field);

struct AdiabaticPopulations {
  double lower = 0.0;
  double upper = 0.0;
};
/// Pointwise projection on the adiabatic states; the origin cell borrows the
/// projector of its +x neighbour.
AdiabaticPopulations adiabatic_populations(const SpinorField& field);

/// <x py - y px> with Fourier derivatives.
double expectation_lz(const SpinorField& field);

/// <Lz> + <sz>/2.
double expectation_jz(const SpinorField& field);

/// <T> + <V> with T evaluated in momentum space and V in position space.
double expectation_energy(const SpinorField& field, const ModelParams& params);

/// Largest density within two cells of any edge.
double edge_density(const SpinorField& field);

}  // namespace jt
