#pragma once

// Post-processing of observable series: power-law fits, conservation
// diagnostics and series-to-series comparison.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "jt/series.hpp"

namespace jt {

struct TimeWindow {
  double lo = 0.0;
  double hi = 0.0;
};

struct PowerLawFit {
  double exponent = 0.0;
  double coefficient = 0.0;
  double r_squared = 0.0;
  TimeWindow window;
  std::size_t samples = 0;
};

/// Least-squares line through (log t, log y) for samples with t inside the
/// window and y > 0. Throws FitError if fewer than 10 such samples exist or
/// if the window holds a non-positive ordinate.
PowerLawFit fit_power_law(const ObservableSeries& series, std::string_view channel,
                          TimeWindow window);

/// Time window of the first contiguous run of samples with lo < y < hi.
/// Throws FitError if no sample qualifies.
TimeWindow auto_window(const ObservableSeries& series, std::string_view channel,
                       double lo = 1e-4, double hi = 0.1);

struct ConservationReport {
  std::optional<double> norm_drift;         ///< max |norm - 1|
  std::optional<double> energy_drift;       ///< max |E - E0| / |E0|
  std::optional<double> jz_drift;           ///< max |Jz - Jz0|
  std::optional<double> spin_norm_drift;    ///< max | |S| - |S0| |
};

/// Drift of every conserved quantity present in the series. Throws
/// MissingChannelError if the series carries none of norm, energy, jz and
/// spin_norm, or has no samples.
ConservationReport conservation_report(const ObservableSeries& series);

/// `key = value` lines for the quantities present.
std::string format_report(const ConservationReport& report);

struct SeriesComparison {
  double max_abs_deviation = 0.0;
  double sign_agreement = 0.0;
  double correlation = 0.0;  ///< sum(a b) / sqrt(sum(a^2) sum(b^2))
  std::size_t samples = 0;
};

/// Compares one channel of two series over their overlapping time window,
/// interpolating the denser series linearly onto the stamps of the coarser
/// one. Throws PreconditionError when the windows do not overlap.
SeriesComparison compare_series(const ObservableSeries& a, const ObservableSeries& b,
                                std::string_view channel,
                                std::optional<TimeWindow> window = std::nullopt);

/// Linear interpolation of samples (t, y) at `at`; t must be increasing and
/// `at` inside [t.front(), t.back()].
double interpolate(const std::vector<double>& t, const std::vector<double>& y, double at);

}  // namespace jt
