#pragma once

// Run configuration in the line-oriented `section.key = value` format.
// `#` starts a comment, blank lines are ignored, unknown keys are errors.
// Sections: model, initial, grid, plan, twa, output; `engine` is the one
// top-level key.

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "jt/grid.hpp"
#include "jt/model.hpp"
#include "jt/propagator.hpp"

namespace jt {

enum class Engine { quantum, semiclassical, twa, gauge };

std::string_view to_string(Engine e);

struct InitialConfig {
  double x0 = 10.0;
  double y0 = 0.0;
  double sigma = 1.0;
  Channel channel = Channel::one;
  std::array<double, 3> spin0{0.0, 0.0, 1.0};

  bool operator==(const InitialConfig&) const = default;
};

struct GridConfig {
  std::size_t n = 256;
  double extent = 25.0;

  bool operator==(const GridConfig&) const = default;
};

struct TwaConfig {
  std::size_t n_traj = 50000;
  std::uint64_t seed = 1;
  bool sample = true;
  int workers = 0;
  std::size_t bins = 64;

  bool operator==(const TwaConfig&) const = default;
};

struct OutputConfig {
  std::string dir = "out";
  std::vector<double> snapshots;
  bool heatmaps = true;

  bool operator==(const OutputConfig&) const = default;
};

struct RunConfig {
  Engine engine = Engine::quantum;
  ModelParams model;
  int spin_factor = 1;
  InitialConfig initial;
  GridConfig grid;
  PropagationPlan plan;
  TwaConfig twa;
  OutputConfig output;

  /// Throws ConfigError naming the first violated precondition.
  void validate() const;

  bool operator==(const RunConfig& o) const;
};

/// The fig1-quantum preset.
RunConfig default_config();

/// Names accepted by `preset_config`.
const std::vector<std::string>& preset_names();

/// fig1-quantum, fig1-twa, fig1-semiclassical or gauge-report. Throws
/// ConfigError for anything else.
RunConfig preset_config(std::string_view name);

/// Applies `text` on top of `base` and validates the result.
RunConfig parse_config(std::string_view text, const RunConfig& base = default_config());

/// Sets one `section.key` without validating. Throws ConfigError.
void apply_setting(RunConfig& config, std::string_view key, std::string_view value,
                   std::size_t line = 0);

/// Every key with its resolved value, in the input format.
std::string dump_config(const RunConfig& config);

}  // namespace jt
