#include "jt/twa.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "jt/errors.hpp"
#include "jt/rng.hpp"

namespace jt {

void EnsembleSpec::validate() const {
  if (n_traj < 1) throw PreconditionError("twa.n_traj must be >= 1");
  if (!(sigma > 0.0)) throw PreconditionError("twa sigma must be > 0");
  const double s2 = spin0[0] * spin0[0] + spin0[1] * spin0[1] + spin0[2] * spin0[2];
  if (!(s2 <= 1.0 + 1e-12)) throw PreconditionError("initial.spin0 must lie in the unit ball");
  if (!(dt > 0.0)) throw PreconditionError("twa.dt must be > 0");
  if (!(t_final >= 0.0)) throw PreconditionError("twa t_final must be >= 0");
  if (record_stride < 1) throw PreconditionError("twa record_stride must be >= 1");
  check_spin_factor(spin_factor);
}

ClassicalState sample_one(const EnsembleSpec& spec, std::uint64_t index) {
  ClassicalState s;
  s.sx = spec.spin0[0];
  s.sy = spec.spin0[1];
  s.sz = spec.spin0[2];
  s.x = spec.center.x;
  s.y = spec.center.y;
  if (!spec.sample_phase_space) return s;

  CounterStream rng(spec.seed, index);
  const auto q = rng.normal_pair();
  const auto p = rng.normal_pair();
  // |psi|^2 has variance sigma^2/2 per axis, |phi|^2 has 1/(2 sigma^2)
  const double q_std = spec.sigma / std::numbers::sqrt2;
  const double p_std = 1.0 / (spec.sigma * std::numbers::sqrt2);
  s.x += q_std * q[0];
  s.y += q_std * q[1];
  s.px = p_std * p[0];
  s.py = p_std * p[1];
  return s;
}

std::vector<ClassicalState> sample_initial(const EnsembleSpec& spec) {
  spec.validate();
  std::vector<ClassicalState> out(spec.n_traj);
  for (std::size_t i = 0; i < spec.n_traj; ++i) out[i] = sample_one(spec, i);
  return out;
}

namespace {

using Row = std::array<double, kEnsembleChannels>;

Row as_row(const ClassicalState& s) { return {s.x, s.y, s.px, s.py, s.sx, s.sy, s.sz}; }

bool finite(const Row& r) {
  return std::all_of(r.begin(), r.end(), [](double v) { return std::isfinite(v); });
}

struct Schedule {
  std::size_t steps;
  std::vector<std::size_t> record_steps;  // includes 0 and the last step
};

Schedule make_schedule(const EnsembleSpec& spec) {
  Schedule s;
  s.steps = static_cast<std::size_t>(std::llround(spec.t_final / spec.dt));
  for (std::size_t i = 0; i <= s.steps; i += spec.record_stride) s.record_steps.push_back(i);
  if (s.record_steps.back() != s.steps) s.record_steps.push_back(s.steps);
  return s;
}

/// Sums and sums of squares per record over a set of trajectories.
struct Partial {
  std::vector<Row> sum;
  std::vector<Row> sum_sq;
  std::size_t count = 0;

  explicit Partial(std::size_t records) : sum(records, Row{}), sum_sq(records, Row{}) {}

  void add(const Partial& o) {
    for (std::size_t r = 0; r < sum.size(); ++r) {
      for (std::size_t c = 0; c < kEnsembleChannels; ++c) {
        sum[r][c] += o.sum[r][c];
        sum_sq[r][c] += o.sum_sq[r][c];
      }
    }
    count += o.count;
  }
};

/// Integrates one member into `buffer`; false if it became non-finite.
bool integrate_member(const EnsembleSpec& spec, const ModelParams& params,
                      const Schedule& schedule, std::uint64_t index, std::vector<Row>& buffer,
                      ClassicalState& final_state) {
  ClassicalState s = sample_one(spec, index);
  std::size_t next = 0;
  for (std::size_t step = 0;; ++step) {
    if (step == schedule.record_steps[next]) {
      buffer[next] = as_row(s);
      if (!finite(buffer[next])) return false;
      if (++next == schedule.record_steps.size()) break;
    }
    s = rk4_step(s, params, spec.dt, spec.spin_factor);
  }
  final_state = s;
  return true;
}

void accumulate(Partial& p, const std::vector<Row>& rows) {
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < kEnsembleChannels; ++c) {
      p.sum[r][c] += rows[r][c];
      p.sum_sq[r][c] += rows[r][c] * rows[r][c];
    }
  }
  ++p.count;
}

Partial tree_reduce(std::vector<Partial>& blocks, std::size_t lo, std::size_t hi) {
  if (hi - lo == 1) return blocks[lo];
  const std::size_t mid = lo + (hi - lo) / 2;
  Partial left = tree_reduce(blocks, lo, mid);
  left.add(tree_reduce(blocks, mid, hi));
  return left;
}

EnsembleResult finish(const EnsembleSpec& spec, const Schedule& schedule, const Partial& total,
                      std::vector<ClassicalState> finals, std::size_t failed) {
  EnsembleResult res;
  res.n_traj = spec.n_traj;
  res.failed = failed;
  res.final_states = std::move(finals);
  const std::size_t records = schedule.record_steps.size();
  res.t.resize(records);
  res.mean.resize(records);
  res.std_error.resize(records);
  const auto n = static_cast<double>(total.count);
  for (std::size_t r = 0; r < records; ++r) {
    res.t[r] = static_cast<double>(schedule.record_steps[r]) * spec.dt;
    for (std::size_t c = 0; c < kEnsembleChannels; ++c) {
      const double mean = total.count ? total.sum[r][c] / n : 0.0;
      double se = 0.0;
      if (total.count > 1) {
        const double var = std::max(0.0, (total.sum_sq[r][c] - n * mean * mean) / (n - 1.0));
        se = std::sqrt(var / n);
      }
      res.mean[r][c] = mean;
      res.std_error[r][c] = se;
    }
  }
  return res;
}

}  // namespace

EnsembleResult run_ensemble(const EnsembleSpec& spec, const ModelParams& params,
                            const EnsembleOptions& options) {
  spec.validate();
  params.validate();
  const Schedule schedule = make_schedule(spec);
  const std::size_t records = schedule.record_steps.size();
  const std::size_t n_blocks = (spec.n_traj + kEnsembleBlock - 1) / kEnsembleBlock;

  std::vector<Partial> blocks(n_blocks, Partial(records));
  std::vector<ClassicalState> finals(spec.n_traj);
  std::vector<unsigned char> ok(spec.n_traj, 0);
  const int workers = options.workers > 0 ? options.workers : omp_get_max_threads();

#pragma omp parallel num_threads(workers)
  {
    std::vector<Row> buffer(records);
#pragma omp for schedule(dynamic, 1)
    for (std::ptrdiff_t b = 0; b < static_cast<std::ptrdiff_t>(n_blocks); ++b) {
      const std::size_t first = static_cast<std::size_t>(b) * kEnsembleBlock;
      const std::size_t last = std::min(spec.n_traj, first + kEnsembleBlock);
      Partial& part = blocks[static_cast<std::size_t>(b)];
      for (std::size_t i = first; i < last; ++i) {
        if (integrate_member(spec, params, schedule, i, buffer, finals[i])) {
          ok[i] = 1;
          accumulate(part, buffer);
        }
      }
    }
  }

  const std::size_t failed =
      spec.n_traj - static_cast<std::size_t>(std::count(ok.begin(), ok.end(), 1));
  if (failed) {
    std::vector<ClassicalState> kept;
    kept.reserve(spec.n_traj - failed);
    for (std::size_t i = 0; i < spec.n_traj; ++i) {
      if (ok[i]) kept.push_back(finals[i]);
    }
    finals = std::move(kept);
  }
  return finish(spec, schedule, tree_reduce(blocks, 0, n_blocks), std::move(finals), failed);
}

namespace reference {

EnsembleResult run_ensemble_serial(const EnsembleSpec& spec, const ModelParams& params) {
  spec.validate();
  params.validate();
  const Schedule schedule = make_schedule(spec);
  Partial total(schedule.record_steps.size());
  std::vector<Row> buffer(schedule.record_steps.size());
  std::vector<ClassicalState> finals;
  finals.reserve(spec.n_traj);
  std::size_t failed = 0;
  for (std::size_t i = 0; i < spec.n_traj; ++i) {
    ClassicalState last;
    if (integrate_member(spec, params, schedule, i, buffer, last)) {
      accumulate(total, buffer);
      finals.push_back(last);
    } else {
      ++failed;
    }
  }
  return finish(spec, schedule, total, std::move(finals), failed);
}

}  // namespace reference

ObservableSeries EnsembleResult::mean_series() const {
  static const char* base[] = {"x", "y", "px", "py", "sx", "sy", "sz"};
  std::vector<std::string> names;
  for (const char* b : base) names.emplace_back(b);
  for (const char* b : base) names.emplace_back(std::string(b) + "_se");
  ObservableSeries series(std::move(names));
  std::array<double, 2 * kEnsembleChannels> row{};
  for (std::size_t r = 0; r < t.size(); ++r) {
    std::copy(mean[r].begin(), mean[r].end(), row.begin());
    std::copy(std_error[r].begin(), std_error[r].end(), row.begin() + kEnsembleChannels);
    series.append(t[r], row);
  }
  return series;
}

double Histogram2D::x_center(std::size_t i) const {
  return range.x_min + (static_cast<double>(i) + 0.5) * (range.x_max - range.x_min) /
                           static_cast<double>(bins_x);
}

double Histogram2D::y_center(std::size_t j) const {
  return range.y_min + (static_cast<double>(j) + 0.5) * (range.y_max - range.y_min) /
                           static_cast<double>(bins_y);
}

Histogram2D ensemble_histogram(const EnsembleResult& result, PhaseSpace space,
                               std::size_t bins_x, std::size_t bins_y, std::optional<Rect> range) {
  if (bins_x < 2 || bins_y < 2) throw PreconditionError("histogram needs >= 2 bins per axis");
  auto coords = [space](const ClassicalState& s) {
    return space == PhaseSpace::position ? Vec2{s.x, s.y} : Vec2{s.px, s.py};
  };
  Histogram2D h;
  h.bins_x = bins_x;
  h.bins_y = bins_y;
  if (range) {
    h.range = *range;
  } else {
    Rect box{std::numeric_limits<double>::max(), std::numeric_limits<double>::lowest(),
             std::numeric_limits<double>::max(), std::numeric_limits<double>::lowest()};
    for (const auto& s : result.final_states) {
      const Vec2 v = coords(s);
      box.x_min = std::min(box.x_min, v.x);
      box.x_max = std::max(box.x_max, v.x);
      box.y_min = std::min(box.y_min, v.y);
      box.y_max = std::max(box.y_max, v.y);
    }
    if (result.final_states.empty()) box = {-1.0, 1.0, -1.0, 1.0};
    const double pad_x = std::max(1e-12, 0.05 * (box.x_max - box.x_min));
    const double pad_y = std::max(1e-12, 0.05 * (box.y_max - box.y_min));
    h.range = {box.x_min - pad_x, box.x_max + pad_x, box.y_min - pad_y, box.y_max + pad_y};
  }
  if (!(h.range.x_max > h.range.x_min) || !(h.range.y_max > h.range.y_min)) {
    throw PreconditionError("histogram rectangle is empty");
  }
  h.counts.assign(bins_x * bins_y, 0.0);
  auto bin = [](double v, double lo, double hi, std::size_t bins, bool& clamped) {
    const double f = (v - lo) / (hi - lo) * static_cast<double>(bins);
    if (!(f >= 0.0)) {
      clamped = true;
      return std::size_t{0};
    }
    if (f >= static_cast<double>(bins)) {
      clamped = clamped || v > hi;
      return bins - 1;
    }
    return static_cast<std::size_t>(f);
  };
  for (const auto& s : result.final_states) {
    const Vec2 v = coords(s);
    bool clamped = false;
    const std::size_t i = bin(v.x, h.range.x_min, h.range.x_max, bins_x, clamped);
    const std::size_t j = bin(v.y, h.range.y_min, h.range.y_max, bins_y, clamped);
    h.counts[j * bins_x + i] += 1.0;
    if (clamped) ++h.clamped;
  }
  return h;
}

}  // namespace jt
