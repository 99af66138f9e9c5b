#include "jt/semiclassical.hpp"

#include <cmath>
#include <sstream>

#include "jt/errors.hpp"

namespace jt {

ClassicalState operator+(const ClassicalState& a, const ClassicalState& b) {
  return {a.x + b.x, a.y + b.y, a.px + b.px, a.py + b.py, a.sx + b.sx, a.sy + b.sy, a.sz + b.sz};
}

ClassicalState operator*(double s, const ClassicalState& a) {
  return {s * a.x, s * a.y, s * a.px, s * a.py, s * a.sx, s * a.sy, s * a.sz};
}

void check_spin_factor(int spin_factor) {
  if (spin_factor != 1 && spin_factor != 2) {
    throw PreconditionError("spin_factor must be 1 or 2");
  }
}

ClassicalState wong_rhs(const ClassicalState& s, const ModelParams& params, int spin_factor) {
  check_spin_factor(spin_factor);
  const double w = params.omega;
  const double k = params.k;
  const double fk = spin_factor * k;
  return {w * s.px,
          w * s.py,
          -w * s.x - k * s.sx,
          -w * s.y - k * s.sy,
          fk * s.y * s.sz,
          -fk * s.x * s.sz,
          fk * (s.x * s.sy - s.y * s.sx)};
}

ClassicalState rk4_step(const ClassicalState& s, const ModelParams& params, double dt,
                        int spin_factor) {
  const ClassicalState k1 = wong_rhs(s, params, spin_factor);
  const ClassicalState k2 = wong_rhs(s + (0.5 * dt) * k1, params, spin_factor);
  const ClassicalState k3 = wong_rhs(s + (0.5 * dt) * k2, params, spin_factor);
  const ClassicalState k4 = wong_rhs(s + dt * k3, params, spin_factor);
  return s + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

double classical_energy(const ClassicalState& s, const ModelParams& params) {
  return 0.5 * params.omega * (s.px * s.px + s.py * s.py + s.x * s.x + s.y * s.y) +
         params.k * (s.x * s.sx + s.y * s.sy);
}

double spin_norm(const ClassicalState& s) {
  return std::sqrt(s.sx * s.sx + s.sy * s.sy + s.sz * s.sz);
}

namespace {

bool finite(const ClassicalState& s) {
  return std::isfinite(s.x) && std::isfinite(s.y) && std::isfinite(s.px) &&
         std::isfinite(s.py) && std::isfinite(s.sx) && std::isfinite(s.sy) &&
         std::isfinite(s.sz);
}

}  // namespace

Trajectory rk4_integrate(const ClassicalState& initial, const ModelParams& params, double dt,
                         double t_final, int spin_factor, std::size_t record_stride) {
  check_spin_factor(spin_factor);
  if (!(dt > 0.0)) throw PreconditionError("rk4 dt must be > 0");
  if (!(t_final >= 0.0)) throw PreconditionError("rk4 t_final must be >= 0");
  if (record_stride < 1) throw PreconditionError("record_stride must be >= 1");

  const auto steps = static_cast<std::size_t>(std::llround(t_final / dt));
  Trajectory out;
  out.t.reserve(steps / record_stride + 2);
  out.states.reserve(steps / record_stride + 2);
  out.t.push_back(0.0);
  out.states.push_back(initial);

  ClassicalState s = initial;
  for (std::size_t i = 1; i <= steps; ++i) {
    s = rk4_step(s, params, dt, spin_factor);
    if (i % record_stride == 0 || i == steps) {
      if (!finite(s)) {
        std::ostringstream msg;
        msg << "semiclassical state became non-finite at t = " << static_cast<double>(i) * dt;
        throw NonFiniteError(msg.str());
      }
      out.t.push_back(static_cast<double>(i) * dt);
      out.states.push_back(s);
    }
  }
  return out;
}

double short_time_prediction(double t, const ModelParams& params, double x0) {
  return params.omega * params.k * params.k * x0 * t * t * t / 6.0;
}

ObservableSeries to_series(const Trajectory& trajectory, const ModelParams& params) {
  ObservableSeries series(semiclassical_channels());
  for (std::size_t i = 0; i < trajectory.t.size(); ++i) {
    const auto& s = trajectory.states[i];
    const double row[] = {s.x,  s.y,  s.px, s.py, s.sx, s.sy, s.sz, classical_energy(s, params),
                          spin_norm(s)};
    series.append(trajectory.t[i], row);
  }
  return series;
}

}  // namespace jt
