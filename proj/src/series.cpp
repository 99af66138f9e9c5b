#include "jt/series.hpp"

#include <algorithm>

#include "jt/errors.hpp"

namespace jt {

ObservableSeries::ObservableSeries(std::vector<std::string> channel_names)
    : names_(std::move(channel_names)), columns_(names_.size()) {}

void ObservableSeries::append(double t, std::span<const double> values) {
  if (values.size() != names_.size()) {
    throw PreconditionError("series append: expected " + std::to_string(names_.size()) +
                            " values, got " + std::to_string(values.size()));
  }
  if (!t_.empty() && !(t > t_.back())) {
    throw PreconditionError("series time stamps must strictly increase");
  }
  t_.push_back(t);
  for (std::size_t i = 0; i < values.size(); ++i) columns_[i].push_back(values[i]);
}

bool ObservableSeries::has(std::string_view name) const noexcept {
  return std::find(names_.begin(), names_.end(), name) != names_.end();
}

const std::vector<double>& ObservableSeries::channel(std::string_view name) const {
  const auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) throw MissingChannelError("missing channel '" + std::string(name) + "'");
  return columns_[static_cast<std::size_t>(it - names_.begin())];
}

}  // namespace jt
