#include "jt/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "jt/errors.hpp"

namespace jt {

PowerLawFit fit_power_law(const ObservableSeries& series, std::string_view channel,
                          TimeWindow window) {
  const auto& t = series.t();
  const auto& y = series.channel(channel);
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0, syy = 0.0;
  std::size_t n = 0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] < window.lo || t[i] > window.hi) continue;
    if (!(y[i] > 0.0) || !(t[i] > 0.0)) {
      throw FitError("power-law fit window contains a non-positive sample");
    }
    const double lx = std::log(t[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    syy += ly * ly;
    ++n;
  }
  if (n < 10) {
    throw FitError("power-law fit needs >= 10 samples in the window, got " + std::to_string(n));
  }
  const double nn = static_cast<double>(n);
  const double cov = sxy - sx * sy / nn;
  const double varx = sxx - sx * sx / nn;
  const double vary = syy - sy * sy / nn;
  PowerLawFit fit;
  fit.exponent = cov / varx;
  fit.coefficient = std::exp((sy - fit.exponent * sx) / nn);
  fit.r_squared = vary > 0.0 ? cov * cov / (varx * vary) : 1.0;
  fit.window = window;
  fit.samples = n;
  return fit;
}

TimeWindow auto_window(const ObservableSeries& series, std::string_view channel, double lo,
                       double hi) {
  const auto& t = series.t();
  const auto& y = series.channel(channel);
  std::size_t i = 0;
  while (i < y.size() && !(y[i] > lo && y[i] < hi)) ++i;
  if (i == y.size()) throw FitError("no sample of '" + std::string(channel) + "' inside range");
  std::size_t j = i;
  while (j + 1 < y.size() && y[j + 1] > lo && y[j + 1] < hi) ++j;
  return {t[i], t[j]};
}

ConservationReport conservation_report(const ObservableSeries& series) {
  if (series.empty()) throw MissingChannelError("conservation report of an empty series");
  ConservationReport r;
  auto max_dev = [](const std::vector<double>& v, double ref, double scale) {
    double worst = 0.0;
    for (double x : v) worst = std::max(worst, std::abs(x - ref) / scale);
    return worst;
  };
  if (series.has("norm")) r.norm_drift = max_dev(series.channel("norm"), 1.0, 1.0);
  if (series.has("energy")) {
    const auto& e = series.channel("energy");
    const double scale = std::abs(e.front()) > 0.0 ? std::abs(e.front()) : 1.0;
    r.energy_drift = max_dev(e, e.front(), scale);
  }
  if (series.has("jz")) {
    const auto& j = series.channel("jz");
    r.jz_drift = max_dev(j, j.front(), 1.0);
  }
  if (series.has("spin_norm")) {
    const auto& s = series.channel("spin_norm");
    r.spin_norm_drift = max_dev(s, s.front(), 1.0);
  }
  if (!r.norm_drift && !r.energy_drift && !r.jz_drift && !r.spin_norm_drift) {
    throw MissingChannelError("series carries no conserved quantity (norm/energy/jz/spin_norm)");
  }
  return r;
}

std::string format_report(const ConservationReport& report) {
  std::ostringstream out;
  out.precision(6);
  out << std::scientific;
  if (report.norm_drift) out << "norm_drift = " << *report.norm_drift << '\n';
  if (report.energy_drift) out << "energy_relative_drift = " << *report.energy_drift << '\n';
  if (report.jz_drift) out << "jz_drift = " << *report.jz_drift << '\n';
  if (report.spin_norm_drift) out << "spin_norm_drift = " << *report.spin_norm_drift << '\n';
  return out.str();
}

double interpolate(const std::vector<double>& t, const std::vector<double>& y, double at) {
  if (t.empty() || at < t.front() || at > t.back()) {
    throw PreconditionError("interpolation point outside the sampled range");
  }
  const auto it = std::lower_bound(t.begin(), t.end(), at);
  const auto i = static_cast<std::size_t>(it - t.begin());
  if (t[i] == at) return y[i];
  const double f = (at - t[i - 1]) / (t[i] - t[i - 1]);
  return y[i - 1] + f * (y[i] - y[i - 1]);
}

SeriesComparison compare_series(const ObservableSeries& a, const ObservableSeries& b,
                                std::string_view channel, std::optional<TimeWindow> window) {
  if (a.empty() || b.empty()) throw PreconditionError("cannot compare an empty series");
  double lo = std::max(a.t().front(), b.t().front());
  double hi = std::min(a.t().back(), b.t().back());
  if (window) {
    lo = std::max(lo, window->lo);
    hi = std::min(hi, window->hi);
  }
  if (!(hi >= lo)) throw PreconditionError("series do not overlap in time");

  // stamps come from the coarser series (fewer samples per unit time)
  const double density_a = static_cast<double>(a.size()) / (a.t().back() - a.t().front() + 1e-300);
  const double density_b = static_cast<double>(b.size()) / (b.t().back() - b.t().front() + 1e-300);
  const bool a_coarse = density_a <= density_b;
  const ObservableSeries& coarse = a_coarse ? a : b;
  const ObservableSeries& fine = a_coarse ? b : a;
  const auto& ct = coarse.t();
  const auto& cy = coarse.channel(channel);
  const auto& ft = fine.t();
  const auto& fy = fine.channel(channel);

  SeriesComparison cmp;
  double sab = 0.0, saa = 0.0, sbb = 0.0;
  std::size_t agree = 0;
  for (std::size_t i = 0; i < ct.size(); ++i) {
    if (ct[i] < lo || ct[i] > hi) continue;
    const double vc = cy[i];
    const double vf = interpolate(ft, fy, ct[i]);
    const double va = a_coarse ? vc : vf;
    const double vb = a_coarse ? vf : vc;
    cmp.max_abs_deviation = std::max(cmp.max_abs_deviation, std::abs(va - vb));
    const auto sign = [](double v) { return (v > 0.0) - (v < 0.0); };
    if (sign(va) == sign(vb)) ++agree;
    sab += va * vb;
    saa += va * va;
    sbb += vb * vb;
    ++cmp.samples;
  }
  if (cmp.samples == 0) throw PreconditionError("no common samples in the overlap window");
  cmp.sign_agreement = static_cast<double>(agree) / static_cast<double>(cmp.samples);
  cmp.correlation = (saa > 0.0 && sbb > 0.0) ? sab / std::sqrt(saa * sbb) : 0.0;
  return cmp;
}

}  // namespace jt
