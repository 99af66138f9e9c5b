#pragma once

// Truncated Wigner ensembles: initial positions and momenta drawn from the
// Gaussian Wigner marginals of the initial packet, each point evolved with
// the semiclassical equations, observables averaged over the ensemble.

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "jt/model.hpp"
#include "jt/semiclassical.hpp"
#include "jt/series.hpp"

namespace jt {

struct EnsembleSpec {
  std::size_t n_traj = 50000;
  Vec2 center{10.0, 0.0};
  double sigma = 1.0;
  std::uint64_t seed = 20120101;
  std::array<double, 3> spin0{0.0, 0.0, 1.0};
  double dt = 0.1;
  double t_final = 15000.0;
  int spin_factor = 1;
  std::size_t record_stride = 100;
  /// When false every member starts exactly at (center, p = 0).
  bool sample_phase_space = true;

  void validate() const;
};

/// Trajectories per reduction block. Block partials are combined in a fixed
/// pairwise tree, so ensemble means do not depend on the number of workers.
inline constexpr std::size_t kEnsembleBlock = 256;

inline constexpr std::size_t kEnsembleChannels = 7;  // x y px py sx sy sz

struct EnsembleResult {
  std::vector<double> t;
  /// mean[r][c] and standard error of the mean, c in x y px py sx sy sz order.
  std::vector<std::array<double, kEnsembleChannels>> mean;
  std::vector<std::array<double, kEnsembleChannels>> std_error;
  std::vector<ClassicalState> final_states;
  std::size_t n_traj = 0;
  std::size_t failed = 0;

  bool valid() const noexcept { return failed == 0; }

  /// Channels x..sz followed by x_se..sz_se.
  ObservableSeries mean_series() const;
};

/// Initial state of trajectory `index`; a pure function of (seed, index).
ClassicalState sample_one(const EnsembleSpec& spec, std::uint64_t index);

std::vector<ClassicalState> sample_initial(const EnsembleSpec& spec);

struct EnsembleOptions {
  int workers = 0;  ///< OpenMP threads, 0 = runtime default
};

EnsembleResult run_ensemble(const EnsembleSpec& spec, const ModelParams& params,
                            const EnsembleOptions& options = {});

namespace reference {
/// Single-threaded loop with a running sum in trajectory order.
EnsembleResult run_ensemble_serial(const EnsembleSpec& spec, const ModelParams& params);
}  // namespace reference

enum class PhaseSpace { position, momentum };

struct Rect {
  double x_min;
  double x_max;
  double y_min;
  double y_max;
};

struct Histogram2D {
  Rect range{};
  std::size_t bins_x = 0;
  std::size_t bins_y = 0;
  std::vector<double> counts;  ///< row-major, row = y bin
  std::size_t clamped = 0;     ///< points outside `range`, counted in edge bins

  double x_center(std::size_t i) const;
  double y_center(std::size_t j) const;
};

/// Final-time scatter binned on `range` (default: bounding box of the
/// scatter). Points outside the rectangle land in the nearest edge bin, so
/// the counts always sum to the number of surviving trajectories.
Histogram2D ensemble_histogram(const EnsembleResult& result, PhaseSpace space,
                               std::size_t bins_x, std::size_t bins_y,
                               std::optional<Rect> range = std::nullopt);

}  // namespace jt
