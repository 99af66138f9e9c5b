#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace jt {

/// Time-indexed record of named real channels. Every channel has one value
/// per time stamp; time stamps strictly increase.
class ObservableSeries {
 public:
  ObservableSeries() = default;
  explicit ObservableSeries(std::vector<std::string> channel_names);

  /// Throws PreconditionError on a length mismatch or a non-increasing t.
  void append(double t, std::span<const double> values);

  std::size_t size() const noexcept { return t_.size(); }
  bool empty() const noexcept { return t_.empty(); }

  const std::vector<double>& t() const noexcept { return t_; }
  const std::vector<std::string>& names() const noexcept { return names_; }

  bool has(std::string_view name) const noexcept;
  /// Throws MissingChannelError.
  const std::vector<double>& channel(std::string_view name) const;

  /// Channel by column position, 0 being the first channel after t.
  const std::vector<double>& column(std::size_t i) const { return columns_.at(i); }

 private:
  std::vector<std::string> names_;
  std::vector<double> t_;
  std::vector<std::vector<double>> columns_;
};

/// Channel names recorded by the quantum propagator.
inline const std::vector<std::string>& quantum_channels() {
  static const std::vector<std::string> names{"x",  "y",  "px",   "py",     "sx",     "sy",
                                              "sz", "norm", "energy", "jz", "pop_minus",
                                              "pop_plus"};
  return names;
}

/// Channel names recorded for single semiclassical trajectories.
inline const std::vector<std::string>& semiclassical_channels() {
  static const std::vector<std::string> names{"x",  "y",  "px",     "py",       "sx",
                                              "sy", "sz", "energy", "spin_norm"};
  return names;
}

}  // namespace jt
