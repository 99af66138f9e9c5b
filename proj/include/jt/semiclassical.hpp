#pragma once

// Wong-type equations for a phase-space point carrying a spin isovector:
//
//   x' = w px          px' = -w x - k sx
//   y' = w py          py' = -w y - k sy
//   sx' = f k y sz     sy' = -f k x sz     sz' = f k (x sy - y sx)
//
// with spin factor f = 1 (as the equations are usually written) or f = 2
// (the precession rate of <sigma> under the quantum Hamiltonian).

#include <cstddef>
#include <vector>

#include "jt/model.hpp"
#include "jt/series.hpp"

namespace jt {

struct ClassicalState {
  double x = 0.0;
  double y = 0.0;
  double px = 0.0;
  double py = 0.0;
  double sx = 0.0;
  double sy = 0.0;
  double sz = 0.0;

  friend bool operator==(const ClassicalState&, const ClassicalState&) = default;
};

ClassicalState operator+(const ClassicalState& a, const ClassicalState& b);
ClassicalState operator*(double s, const ClassicalState& a);

/// Throws PreconditionError unless spin_factor is 1 or 2.
void check_spin_factor(int spin_factor);

ClassicalState wong_rhs(const ClassicalState& s, const ModelParams& params, int spin_factor = 1);

ClassicalState rk4_step(const ClassicalState& s, const ModelParams& params, double dt,
                        int spin_factor = 1);

/// w (p^2 + q^2)/2 + k (x sx + y sy); conserved for both spin factors.
double classical_energy(const ClassicalState& s, const ModelParams& params);

double spin_norm(const ClassicalState& s);

struct Trajectory {
  std::vector<double> t;
  std::vector<ClassicalState> states;
};

/// Fixed-step RK4 from t = 0 to t_final (rounded to a multiple of dt),
/// keeping every `record_stride`-th state plus the last one. Throws
/// NonFiniteError if the state stops being finite.
Trajectory rk4_integrate(const ClassicalState& initial, const ModelParams& params, double dt,
                         double t_final, int spin_factor = 1, std::size_t record_stride = 1);

/// Leading short-time transverse displacement w k^2 x0 t^3 / 6 of the
/// spin_factor = 1 system released from (x0, 0) at rest with s = (0, 0, 1).
/// Valid while w t << 1 and k x0 t << 1.
double short_time_prediction(double t, const ModelParams& params, double x0);

/// Trajectory in the `semiclassical_channels()` schema.
ObservableSeries to_series(const Trajectory& trajectory, const ModelParams& params);

}  // namespace jt
