#include "jt/model.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "jt/errors.hpp"

namespace jt {

namespace {

double radius(Vec2 q) { return std::hypot(q.x, q.y); }

void require_off_origin(Vec2 q, const char* what) {
  if (q.x == 0.0 && q.y == 0.0) {
    throw SingularPointError(std::string(what) + " is undefined at the conical intersection");
  }
}

}  // namespace

void ModelParams::validate() const {
  if (!std::isfinite(omega) || omega <= 0.0) {
    throw PreconditionError("model.omega must be finite and > 0");
  }
  if (!std::isfinite(k) || k < 0.0) {
    throw PreconditionError("model.k must be finite and >= 0");
  }
  if (!std::isfinite(k / omega)) {
    throw PreconditionError("model.k / model.omega must be finite");
  }
}

Mat2 PauliDecomposition::matrix() const {
  return cplx{a} * Mat2::identity() + cplx{b[0]} * pauli::x +
         cplx{b[1]} * pauli::y + cplx{b[2]} * pauli::z;
}

PauliDecomposition PauliDecomposition::from_matrix(const Mat2& m) {
  PauliDecomposition d;
  d.a = 0.5 * std::real(m(0, 0) + m(1, 1));
  d.b[0] = std::real(m(0, 1) + m(1, 0)) * 0.5;
  d.b[1] = std::imag(m(1, 0) - m(0, 1)) * 0.5;
  d.b[2] = 0.5 * std::real(m(0, 0) - m(1, 1));
  return d;
}

PauliDecomposition diabatic_potential(Vec2 q, const ModelParams& params) {
  PauliDecomposition d;
  d.a = 0.5 * params.omega * (q.x * q.x + q.y * q.y);
  d.b = {params.k * q.x, params.k * q.y, 0.0};
  return d;
}

AdiabaticEnergies adiabatic_energies(Vec2 q, const ModelParams& params) {
  const double rho = radius(q);
  const double harmonic = 0.5 * params.omega * rho * rho;
  return {harmonic - params.k * rho, harmonic + params.k * rho};
}

AdiabaticStates adiabatic_states_at_angle(double phi) {
  // b.sigma / (k rho) = [[0, e^{-i phi}], [e^{i phi}, 0]]
  const double s = std::numbers::sqrt2 / 2.0;
  const cplx down = std::polar(s, -0.5 * phi);
  const cplx up = std::polar(s, 0.5 * phi);
  return {Spinor{down, -up}, Spinor{down, up}};
}

AdiabaticStates adiabatic_states(Vec2 q) {
  require_off_origin(q, "adiabatic_states");
  return adiabatic_states_at_angle(std::atan2(q.y, q.x));
}

GaugeSample gauge_potential(Vec2 q) {
  require_off_origin(q, "gauge_potential");
  const double r2 = q.x * q.x + q.y * q.y;
  GaugeSample g;
  g.ax = cplx{q.y / r2} * pauli::y;
  g.ay = cplx{-q.x / r2} * pauli::y;
  g.phi = 1.0 / (8.0 * r2);
  return g;
}

Mat2 field_tensor_central(Vec2 q, double step) {
  if (!(step > 0.0)) throw PreconditionError("field_tensor step must be > 0");
  if (radius(q) < 2.0 * step) {
    throw SingularPointError("field_tensor stencil reaches the conical intersection");
  }
  const cplx inv2h{1.0 / (2.0 * step)};
  const Mat2 day_dx = inv2h * (gauge_potential({q.x + step, q.y}).ay -
                               gauge_potential({q.x - step, q.y}).ay);
  const Mat2 dax_dy = inv2h * (gauge_potential({q.x, q.y + step}).ax -
                               gauge_potential({q.x, q.y - step}).ax);
  const GaugeSample centre = gauge_potential(q);
  return day_dx - dax_dy - cplx{0.0, 1.0} * commutator(centre.ax, centre.ay);
}

Mat2 field_tensor(Vec2 q, double step) {
  const Mat2 coarse = field_tensor_central(q, step);
  const Mat2 fine = field_tensor_central(q, 0.5 * step);
  return cplx{4.0 / 3.0} * fine - cplx{1.0 / 3.0} * coarse;
}

cplx wilson_loop(const Spinor* states, std::size_t count) {
  cplx product{1.0, 0.0};
  for (std::size_t j = 0; j < count; ++j) {
    const Spinor& next = states[(j + 1) % count];
    const cplx overlap = inner(next, states[j]);
    const double modulus = std::abs(overlap);
    if (modulus == 0.0) {
      throw SingularPointError("orthogonal neighbours in Wilson loop; refine the loop");
    }
    product *= overlap / modulus;
  }
  return product;
}

cplx berry_wilson_loop(double radius_value, std::size_t n_points) {
  if (!(radius_value > 0.0)) throw PreconditionError("loop radius must be > 0");
  if (n_points < 16) throw PreconditionError("loop needs at least 16 points");
  std::vector<Spinor> loop(n_points);
  const double dphi = 2.0 * std::numbers::pi / static_cast<double>(n_points);
  for (std::size_t j = 0; j < n_points; ++j) {
    // continuation in the loop parameter, not the principal atan2 branch
    loop[j] = adiabatic_states_at_angle(dphi * static_cast<double>(j)).lower;
  }
  return wilson_loop(loop.data(), loop.size());
}

double berry_phase_loop(double radius_value, std::size_t n_points) {
  const cplx w = berry_wilson_loop(radius_value, n_points);
  double gamma = std::atan2(std::imag(w), std::real(w));
  // the interval is half-open at -pi; its image under rounding belongs to +pi
  if (gamma <= -std::numbers::pi + 1e-12) gamma += 2.0 * std::numbers::pi;
  if (gamma > std::numbers::pi) gamma = std::numbers::pi;
  return gamma;
}

DualGauge dual_gauge(const ModelParams& params) {
  params.validate();
  const double ratio = params.k / params.omega;
  DualGauge g;
  g.atilde_x = cplx{-ratio} * pauli::x;
  g.atilde_y = cplx{-ratio} * pauli::y;
  // omega (Q - Atilde)^2 / 2 adds k^2/omega; cancel it so the expansion is H.
  g.phi_tilde = -params.k * params.k / params.omega;
  g.bz_coefficient = 2.0 * ratio * ratio;
  return g;
}

Vec2 dual_lorentz_force(Vec2 q, double spin_z, const ModelParams& params) {
  const double ratio = params.k / params.omega;
  const double c = 2.0 * ratio * ratio * spin_z;
  return {-c * q.y, c * q.x};
}

}  // namespace jt
