#pragma once

// Algebraic content of the linear E x epsilon Jahn-Teller Hamiltonian
//
//   H = omega (Px^2/2 + Py^2/2 + Qx^2/2 + Qy^2/2) + k (Qx sx + Qy sy)
//
// in atomic units. Pauli matrices are the standard ones in the diabatic basis
// (|1> = spin up, sz|1> = +|1>).

#include <array>

#include "jt/linalg2.hpp"

namespace jt {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Vec2&, const Vec2&) = default;
};

struct ModelParams {
  double omega = 0.02;  ///< vibrational frequency, > 0
  double k = 0.01;      ///< JT coupling strength, >= 0

  /// Throws PreconditionError when omega <= 0, k < 0 or either is not finite.
  void validate() const;

  double coupling_ratio() const { return k / omega; }
};

/// Hermitian 2x2 matrix written as a*I + b.sigma.
struct PauliDecomposition {
  double a = 0.0;
  std::array<double, 3> b{};

  Mat2 matrix() const;
  static PauliDecomposition from_matrix(const Mat2& m);
};

struct AdiabaticEnergies {
  double lower = 0.0;
  double upper = 0.0;
};

/// Eigenvectors of the coupling term, `lower` belongs to -k*rho.
struct AdiabaticStates {
  Spinor lower{};
  Spinor upper{};
};

/// Position-representation gauge potential and scalar potential at a point.
struct GaugeSample {
  Mat2 ax;
  Mat2 ay;
  double phi = 0.0;
};

/// Constant non-Abelian potentials of the momentum-picture (dual) form of H.
struct DualGauge {
  Mat2 atilde_x;
  Mat2 atilde_y;
  double phi_tilde = 0.0;
  double bz_coefficient = 0.0;  ///< coefficient of sz in -i[Atilde_x, Atilde_y]

  Mat2 bz() const { return cplx{bz_coefficient} * pauli::z; }
};

PauliDecomposition diabatic_potential(Vec2 q, const ModelParams& params);

AdiabaticEnergies adiabatic_energies(Vec2 q, const ModelParams& params);

/// Throws SingularPointError at the origin. The polar angle is the principal
/// value of atan2, so the states jump sign across the negative x axis.
AdiabaticStates adiabatic_states(Vec2 q);

/// Adiabatic states parametrised directly by the polar angle. Continuous in
/// `phi`; advancing phi by 2*pi flips the sign of both states.
AdiabaticStates adiabatic_states_at_angle(double phi);

/// Throws SingularPointError at the origin.
GaugeSample gauge_potential(Vec2 q);

/// F_xy = dAy/dx - dAx/dy - i[Ax, Ay] by second-order central differences.
/// Throws SingularPointError when |q| < 2*step.
Mat2 field_tensor_central(Vec2 q, double step);

/// F_xy from central differences at `step` and `step/2`, combined by one
/// Richardson extrapolation (fourth order in `step`).
Mat2 field_tensor(Vec2 q, double step = 1e-3);

/// Product around a closed loop of the unit-modulus phases of
/// <psi_{j+1}|psi_j>, with psi_N = psi_0. Gauge invariant.
cplx wilson_loop(const Spinor* states, std::size_t count);

/// Unit-modulus Wilson loop of the lower adiabatic state on a circle of the
/// given radius, sampled at `n_points` equally spaced angles.
cplx berry_wilson_loop(double radius, std::size_t n_points);

/// Geometric phase of the lower adiabatic state around the circle, in
/// (-pi, pi]. Requires radius > 0 and n_points >= 16.
double berry_phase_loop(double radius, std::size_t n_points);

DualGauge dual_gauge(const ModelParams& params);

/// Expectation-value form 2 (k/omega)^2 s_z (-qy, qx).
Vec2 dual_lorentz_force(Vec2 q, double spin_z, const ModelParams& params);

}  // namespace jt
