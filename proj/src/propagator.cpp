#include "jt/propagator.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "jt/errors.hpp"
#include "jt/fourier.hpp"

namespace jt {

namespace kp = kernels::parallel;

void PropagationPlan::validate() const {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw PreconditionError("plan.dt must be > 0");
  if (!(t_final >= dt) || !std::isfinite(t_final)) {
    throw PreconditionError("plan.t_final must be >= plan.dt");
  }
  if (record_stride < 1) throw PreconditionError("plan.record_stride must be >= 1");
}

std::size_t PropagationPlan::steps() const {
  return static_cast<std::size_t>(std::llround(t_final / dt));
}

SplitOperator::SplitOperator(const Grid2D& grid, const ModelParams& params, double dt)
    : grid_(grid), dt_(dt), half_phase_(grid.size()), full_phase_(grid.size()) {
  params.validate();
  const double scale = 1.0 / static_cast<double>(grid.size());
  kp::build_kinetic_phase(grid, params.omega, 0.5 * dt, scale, half_phase_);
  kp::build_kinetic_phase(grid, params.omega, dt, scale, full_phase_);
  kp::build_local_unitary(grid, params, dt, potential_);
  fourier(grid.n());
}

void SplitOperator::kinetic(SpinorField& field, const ComplexArray& phase) const {
  const auto& ft = fourier(grid_.n());
  ft.forward(field.c1);
  ft.forward(field.c2);
  kp::multiply_phase(field.c1, field.c2, phase);
  ft.inverse_unnormalized(field.c1);
  ft.inverse_unnormalized(field.c2);
}

void SplitOperator::potential(SpinorField& field) const {
  kp::apply_local_unitary(field.c1, field.c2, potential_);
}

void SplitOperator::step(SpinorField& field) const {
  half_kinetic(field);
  potential(field);
  half_kinetic(field);
}

void SplitOperator::advance(SpinorField& field, std::size_t count) const {
  if (count == 0) return;
  half_kinetic(field);
  for (std::size_t s = 0; s + 1 < count; ++s) {
    potential(field);
    full_kinetic(field);
  }
  potential(field);
  half_kinetic(field);
}

void kinetic_step(SpinorField& field, const ModelParams& params, double dt_eff) {
  const auto& g = field.grid;
  ComplexArray phase(g.size());
  kp::build_kinetic_phase(g, params.omega, dt_eff, 1.0 / static_cast<double>(g.size()), phase);
  const auto& ft = fourier(g.n());
  ft.forward(field.c1);
  ft.forward(field.c2);
  kp::multiply_phase(field.c1, field.c2, phase);
  ft.inverse_unnormalized(field.c1);
  ft.inverse_unnormalized(field.c2);
}

void potential_step(SpinorField& field, const ModelParams& params, double dt) {
  kernels::LocalUnitary u;
  kp::build_local_unitary(field.grid, params, dt, u);
  kp::apply_local_unitary(field.c1, field.c2, u);
}

void strang_step(SpinorField& field, const ModelParams& params, double dt) {
  kinetic_step(field, params, 0.5 * dt);
  potential_step(field, params, dt);
  kinetic_step(field, params, 0.5 * dt);
}

std::array<double, 12> measure(const SpinorField& field, const ModelParams& params) {
  const Vec2 q = expectation_position(field);
  const Vec2 p = expectation_momentum(field);
  const auto s = spin_expectations(field);
  const auto pops = adiabatic_populations(field);
  return {q.x,
          q.y,
          p.x,
          p.y,
          s[0],
          s[1],
          s[2],
          norm(field),
          expectation_energy(field, params),
          expectation_lz(field) + 0.5 * s[2],
          pops.lower,
          pops.upper};
}

PropagationResult propagate(SpinorField field, const ModelParams& params,
                            const PropagationPlan& plan, const PropagationOptions& options) {
  plan.validate();
  params.validate();
  const double n0 = norm(field);
  if (!(std::abs(n0 - 1.0) < 1e-6)) {
    throw PreconditionError("propagate requires a normalised field (norm " + std::to_string(n0) +
                            ")");
  }

  const std::size_t total = plan.steps();
  std::set<std::size_t> stops;
  for (std::size_t s = plan.record_stride; s < total; s += plan.record_stride) stops.insert(s);
  stops.insert(total);
  std::set<std::size_t> snapshot_steps;
  for (double ts : options.snapshot_times) {
    if (ts < 0.0) continue;
    const auto s = std::min(total, static_cast<std::size_t>(std::llround(ts / plan.dt)));
    snapshot_steps.insert(s);
    if (s > 0) stops.insert(s);
  }

  PropagationResult result{ObservableSeries(quantum_channels()), field, {}, {}};
  const SplitOperator op(field.grid, params, plan.dt);
  bool edge_warned = false;

  auto visit = [&](std::size_t step, bool record) {
    const double t = static_cast<double>(step) * plan.dt;
    if (record) {
      const auto values = measure(field, params);
      for (double v : values) {
        if (!std::isfinite(v)) {
          std::ostringstream msg;
          msg << "non-finite observable at t = " << t;
          throw NonFiniteError(msg.str());
        }
      }
      result.series.append(t, values);
      if (options.observer) options.observer(t, field);
      const double edge = edge_density(field);
      if (!edge_warned && edge > options.edge_threshold) {
        std::ostringstream msg;
        msg << "support monitor: edge density " << edge << " at t = " << t;
        result.warnings.push_back(msg.str());
        edge_warned = true;
      }
    }
    if (snapshot_steps.count(step)) result.snapshots.push_back({t, field});
  };

  visit(0, true);
  std::size_t done = 0;
  for (std::size_t stop : stops) {
    op.advance(field, stop - done);
    done = stop;
    visit(stop, stop % plan.record_stride == 0 || stop == total);
  }
  result.final_field = std::move(field);
  return result;
}

}  // namespace jt
