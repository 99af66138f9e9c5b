#pragma once

// Strang-split spectral propagation of a SpinorField under the JT
// Hamiltonian: half kinetic kick in momentum space, exact pointwise 2x2
// potential exponential in position space, half kinetic kick.

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "jt/grid.hpp"
#include "jt/kernels.hpp"
#include "jt/model.hpp"
#include "jt/series.hpp"

namespace jt {

struct PropagationPlan {
  double dt = 0.1;
  double t_final = 15000.0;
  std::size_t record_stride = 100;

  void validate() const;
  /// Number of steps; t_final is rounded to the nearest multiple of dt.
  std::size_t steps() const;
};

struct Snapshot {
  double t = 0.0;
  SpinorField field;
};

struct PropagationOptions {
  /// Times at which a copy of the field is kept (rounded to the step grid).
  std::vector<double> snapshot_times;
  /// Called at every record with the synchronised field.
  std::function<void(double, const SpinorField&)> observer;
  /// Edge density above which the support monitor warns.
  double edge_threshold = 1e-8;
};

struct PropagationResult {
  ObservableSeries series;
  SpinorField final_field;
  std::vector<Snapshot> snapshots;
  std::vector<std::string> warnings;
};

/// Precomputed kinetic phases and pointwise potential unitaries for one
/// grid, model and time step.
class SplitOperator {
 public:
  SplitOperator(const Grid2D& grid, const ModelParams& params, double dt);

  double dt() const noexcept { return dt_; }

  void half_kinetic(SpinorField& field) const { kinetic(field, half_phase_); }
  void full_kinetic(SpinorField& field) const { kinetic(field, full_phase_); }
  void potential(SpinorField& field) const;

  /// One K(dt/2) V(dt) K(dt/2) step.
  void step(SpinorField& field) const;

  /// `count` Strang steps with adjacent half kicks fused into full kicks.
  void advance(SpinorField& field, std::size_t count) const;

 private:
  void kinetic(SpinorField& field, const ComplexArray& phase) const;

  Grid2D grid_;
  double dt_;
  ComplexArray half_phase_;  // includes the 1/n^2 of the inverse transform
  ComplexArray full_phase_;
  kernels::LocalUnitary potential_;
};

/// Multiplies the momentum representation by exp(-i dt_eff omega p^2/2).
void kinetic_step(SpinorField& field, const ModelParams& params, double dt_eff);

/// Applies exp(-i dt V(q)) pointwise with the exact 2x2 exponential.
void potential_step(SpinorField& field, const ModelParams& params, double dt);

void strang_step(SpinorField& field, const ModelParams& params, double dt);

/// Observables in `quantum_channels()` order (t excluded).
std::array<double, 12> measure(const SpinorField& field, const ModelParams& params);

/// Throws PreconditionError for an invalid plan or an unnormalised field and
/// NonFiniteError if the field blows up.
PropagationResult propagate(SpinorField field, const ModelParams& params,
                            const PropagationPlan& plan, const PropagationOptions& options = {});

}  // namespace jt
