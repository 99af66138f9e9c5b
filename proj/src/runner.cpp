#include "jt/runner.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "jt/analysis.hpp"
#include "jt/errors.hpp"
#include "jt/io.hpp"
#include "jt/propagator.hpp"
#include "jt/semiclassical.hpp"
#include "jt/twa.hpp"

namespace jt {

namespace {

namespace fs = std::filesystem;

struct Writer {
  fs::path dir;
  RunSummary& summary;

  fs::path file(const std::string& name) {
    fs::path p = dir / name;
    summary.files.push_back(p);
    return p;
  }

  void text(const std::string& name, const std::string& body) {
    std::ofstream out(file(name));
    if (!out) throw std::runtime_error("cannot write " + (dir / name).string());
    out << body;
  }

  void heatmap(const std::string& stem, const Heatmap& map) {
    const std::string warning = emit_heatmap(map, dir / stem);
    summary.files.push_back(dir / (stem + ".csv"));
    summary.files.push_back(dir / (stem + ".pgm"));
    if (!warning.empty()) summary.warnings.push_back(warning);
  }
};

std::string time_tag(double t) {
  std::ostringstream s;
  s << t;
  return s.str();
}

std::vector<double> axis_positions(const Grid2D& g) {
  std::vector<double> v(g.n());
  for (std::size_t i = 0; i < g.n(); ++i) v[i] = g.position(i);
  return v;
}

std::vector<double> axis_momenta(const Grid2D& g) {
  std::vector<double> v(g.n());
  for (std::size_t i = 0; i < g.n(); ++i) v[i] = g.momentum_natural(i);
  return v;
}

void write_field_dumps(Writer& w, const SpinorField& field, const std::string& tag,
                       bool heatmaps) {
  const auto& g = field.grid;
  if (heatmaps) {
    const auto d = densities(field);
    w.heatmap("density_position_" + tag, {axis_positions(g), axis_positions(g), d.position});
    w.heatmap("density_momentum_" + tag, {axis_momenta(g), axis_momenta(g), d.momentum});
  }
  write_profile_csv(axis_positions(g), projected_distribution(field, Axis::y), "qy", "P",
                    w.file("marginal_y_" + tag + ".csv"));
}

void run_quantum(const RunConfig& c, Writer& w) {
  const Grid2D grid(c.grid.n, c.grid.extent);
  SpinorField field = make_gaussian(grid, {c.initial.x0, c.initial.y0}, c.initial.sigma,
                                    c.initial.channel);
  PropagationOptions options;
  options.snapshot_times = c.output.snapshots;
  const auto result = propagate(std::move(field), c.model, c.plan, options);
  for (const auto& msg : result.warnings) w.summary.warnings.push_back(msg);
  write_series_csv(result.series, w.file("series.csv"));
  w.text("conservation.txt", format_report(conservation_report(result.series)));
  for (const auto& snap : result.snapshots) {
    write_field_dumps(w, snap.field, "t" + time_tag(snap.t), c.output.heatmaps);
  }
  write_field_dumps(w, result.final_field, "final", c.output.heatmaps);
}

void run_semiclassical(const RunConfig& c, Writer& w) {
  ClassicalState s0;
  s0.x = c.initial.x0;
  s0.y = c.initial.y0;
  s0.sx = c.initial.spin0[0];
  s0.sy = c.initial.spin0[1];
  s0.sz = c.initial.spin0[2];
  const auto traj =
      rk4_integrate(s0, c.model, c.plan.dt, c.plan.t_final, c.spin_factor, c.plan.record_stride);
  const auto series = to_series(traj, c.model);
  write_series_csv(series, w.file("series.csv"));
  w.text("conservation.txt", format_report(conservation_report(series)));
}

Heatmap to_heatmap(const Histogram2D& h) {
  Heatmap m;
  for (std::size_t i = 0; i < h.bins_x; ++i) m.x.push_back(h.x_center(i));
  for (std::size_t j = 0; j < h.bins_y; ++j) m.y.push_back(h.y_center(j));
  m.values = h.counts;
  return m;
}

void run_twa(const RunConfig& c, Writer& w) {
  EnsembleSpec spec;
  spec.n_traj = c.twa.n_traj;
  spec.center = {c.initial.x0, c.initial.y0};
  spec.sigma = c.initial.sigma;
  spec.seed = c.twa.seed;
  spec.spin0 = c.initial.spin0;
  spec.dt = c.plan.dt;
  spec.t_final = c.plan.t_final;
  spec.spin_factor = c.spin_factor;
  spec.record_stride = c.plan.record_stride;
  spec.sample_phase_space = c.twa.sample;
  const auto result = run_ensemble(spec, c.model, {c.twa.workers});
  write_series_csv(result.mean_series(), w.file("series.csv"));
  if (c.output.heatmaps) {
    w.heatmap("histogram_position",
              to_heatmap(ensemble_histogram(result, PhaseSpace::position, c.twa.bins, c.twa.bins)));
    w.heatmap("histogram_momentum",
              to_heatmap(ensemble_histogram(result, PhaseSpace::momentum, c.twa.bins, c.twa.bins)));
  }
  {
    std::ofstream out(w.file("final_scatter.csv"));
    out << "x,y,px,py,sx,sy,sz\n";
    for (const auto& s : result.final_states) {
      out << format_double(s.x) << ',' << format_double(s.y) << ',' << format_double(s.px) << ','
          << format_double(s.py) << ',' << format_double(s.sx) << ',' << format_double(s.sy)
          << ',' << format_double(s.sz) << '\n';
    }
  }
  if (!result.valid()) {
    throw NonFiniteError(std::to_string(result.failed) + " of " + std::to_string(spec.n_traj) +
                         " trajectories became non-finite");
  }
}

void run_gauge(const RunConfig& c, Writer& w) {
  std::ostringstream out;
  auto kv = [&](const std::string& k, double v) { out << k << " = " << format_double(v) << '\n'; };
  const DualGauge dual = dual_gauge(c.model);
  kv("omega", c.model.omega);
  kv("k", c.model.k);
  kv("bz_coefficient", dual.bz_coefficient);
  kv("phi_tilde", dual.phi_tilde);
  kv("atilde_coefficient", -c.model.k / c.model.omega);
  const Mat2 bz = cplx{0.0, -1.0} * commutator(dual.atilde_x, dual.atilde_y);
  kv("commutator_residual", max_abs(bz - dual.bz()));
  for (double r : {0.1, 1.0, 5.0}) {
    std::ostringstream key;
    key << "berry_phase_r" << r;
    kv(key.str(), berry_phase_loop(r, 1000));
  }
  kv("berry_phase_expected", std::numbers::pi);
  double worst = 0.0;
  for (double r : {0.5, 1.0, 2.0, 5.0, 7.0, 10.0}) {
    for (int a = 0; a < 16; ++a) {
      const double phi = 2.0 * std::numbers::pi * a / 16.0 + 0.1;
      worst = std::max(worst, max_abs(field_tensor({r * std::cos(phi), r * std::sin(phi)})));
    }
  }
  kv("field_tensor_max_norm_rho_ge_0.5", worst);
  w.text("gauge_report.txt", out.str());
}

}  // namespace

RunSummary run(const RunConfig& config) {
  RunSummary summary;
  const fs::path dir(config.output.dir);
  std::string status = "complete";
  try {
    config.validate();
    fs::create_directories(dir);
    Writer w{dir, summary};
    switch (config.engine) {
      case Engine::quantum:
        run_quantum(config, w);
        break;
      case Engine::semiclassical:
        run_semiclassical(config, w);
        break;
      case Engine::twa:
        run_twa(config, w);
        break;
      case Engine::gauge:
        run_gauge(config, w);
        break;
    }
  } catch (const std::exception& e) {
    summary.exit_status = 1;
    summary.error = e.what();
    status = "partial";
  }

  std::error_code ec;
  fs::create_directories(dir, ec);
  std::ofstream meta(dir / "metadata.txt");
  if (meta) {
    meta << "# " << kVersion << '\n';
    meta << "status = " << status << '\n';
    if (!summary.error.empty()) meta << "error = " << summary.error << '\n';
    for (const auto& wmsg : summary.warnings) meta << "warning = " << wmsg << '\n';
    meta << "seed = " << config.twa.seed << '\n';
    meta << "spin_factor = " << config.spin_factor << '\n';
    meta << "# resolved configuration\n" << dump_config(config);
    summary.files.push_back(dir / "metadata.txt");
  } else if (summary.exit_status == 0) {
    summary.exit_status = 1;
    summary.error = "cannot write metadata";
  }
  return summary;
}

}  // namespace jt
