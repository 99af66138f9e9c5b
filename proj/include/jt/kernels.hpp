#pragma once

// Data-parallel grid kernels used by the propagator and the observables.
//
// Two backends with identical signatures: `serial` is the straightforward
// single-loop reference kept for testing and benchmarking, `parallel` splits
// the work over OpenMP threads. Reductions in `parallel` accumulate one
// partial per grid row and add the rows in order, so their result does not
// depend on the thread count.

#include <complex>
#include <span>

#include "jt/grid.hpp"
#include "jt/model.hpp"

namespace jt::kernels {

using cspan = std::span<std::complex<double>>;
using ccspan = std::span<const std::complex<double>>;

/// Pointwise exp(-i V(q) dt) for the 2x2 potential matrix, stored as its
/// diagonal and the two off-diagonal entries.
struct LocalUnitary {
  ComplexArray diag;
  ComplexArray upper;  // (0,1)
  ComplexArray lower;  // (1,0)
};

/// Plain sums over grid points (no cell-area factor). w = |c1|^2 + |c2|^2,
/// s* are the spin bilinears.
struct PositionMoments {
  double w = 0.0;
  double x = 0.0;
  double y = 0.0;
  double xx = 0.0;
  double yy = 0.0;
  double sx = 0.0;
  double sy = 0.0;
  double sz = 0.0;
  double x_sx = 0.0;  // sum x * sx-density
  double y_sy = 0.0;

  PositionMoments& operator+=(const PositionMoments& o);
};

/// Plain sums over FFT-ordered momentum points.
struct MomentumMoments {
  double w = 0.0;
  double px = 0.0;
  double py = 0.0;
  double p2 = 0.0;

  MomentumMoments& operator+=(const MomentumMoments& o);
};

#define JT_KERNEL_DECLARATIONS                                                          \
  void build_kinetic_phase(const Grid2D& grid, double omega, double dt, double scale,  \
                           cspan phase);                                               \
  void build_local_unitary(const Grid2D& grid, const ModelParams& params, double dt,   \
                           LocalUnitary& out);                                         \
  void multiply_phase(cspan c1, cspan c2, ccspan phase);                               \
  void apply_local_unitary(cspan c1, cspan c2, const LocalUnitary& u);                 \
  PositionMoments position_moments(const Grid2D& grid, ccspan c1, ccspan c2);          \
  MomentumMoments momentum_moments(const Grid2D& grid, ccspan c1, ccspan c2);

namespace serial {
JT_KERNEL_DECLARATIONS
}  // namespace serial

namespace parallel {
JT_KERNEL_DECLARATIONS
}  // namespace parallel

#undef JT_KERNEL_DECLARATIONS

/// Value of the kinetic propagator factor exp(-i dt omega p^2 / 2) * scale.
inline std::complex<double> kinetic_factor(double px, double py, double omega, double dt,
                                           double scale) {
  return std::polar(scale, -0.5 * dt * omega * (px * px + py * py));
}

/// exp(-i dt (a + b.sigma)) for a = omega rho^2/2, b = k (x, y, 0), written
/// as e^{-i a dt} [cos(r dt) - i sin(r dt) b.sigma / r].
inline void local_unitary_at(double x, double y, const ModelParams& params, double dt,
                             std::complex<double>& diag, std::complex<double>& upper,
                             std::complex<double>& lower) {
  const double rho = std::hypot(x, y);
  const double a = 0.5 * params.omega * rho * rho;
  const double r = params.k * rho;
  const std::complex<double> phase = std::polar(1.0, -a * dt);
  diag = phase * std::cos(r * dt);
  if (r == 0.0) {
    upper = lower = 0.0;
    return;
  }
  // b.sigma / r = [[0, (bx - i by)/r], [(bx + i by)/r, 0]] = [[0, e^{-i phi}], [e^{i phi}, 0]]
  const std::complex<double> mix = phase * std::complex<double>(0.0, -std::sin(r * dt));
  upper = mix * std::complex<double>(x / rho, -y / rho);
  lower = mix * std::complex<double>(x / rho, y / rho);
}

}  // namespace jt::kernels
